#pragma once

#include <cstdint>
#include <random>

namespace corrbeta {

/// Seedable uniform source. The pair (seed, stream_id) fully determines the
/// sequence; distinct stream ids give statistically independent sequences
/// for the same seed. Not safe for concurrent use: give each thread its own
/// stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

inline double uniform(RngStream& stream) { return stream.uniform(); }

}  // namespace corrbeta
