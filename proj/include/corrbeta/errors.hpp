#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace corrbeta {

/// Marginal shapes or target correlation outside their admissible domain.
class InvalidTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a numeric routine.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidShape : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every Johnk trial in the attempt budget had S > 1.
class TooManyRejections : public std::runtime_error {
 public:
  explicit TooManyRejections(std::uint64_t attempts)
      : std::runtime_error("Johnk rejection budget exhausted after " +
                           std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}

  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

}  // namespace corrbeta
