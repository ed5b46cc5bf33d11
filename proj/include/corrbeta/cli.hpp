#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "corrbeta/samplers.hpp"

namespace corrbeta::cli {

/// Process exit codes; part of the command-line contract.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kRejectionBudget = 3,
  kValidationFailed = 4,
};

enum class Format { Text, Csv, Json };

struct CliConfig {
  std::string subcommand;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double r = 0.0;
  std::size_t n = 0;
  Method method = Method::Gamma;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  Format format = Format::Text;
  std::optional<std::string> output;
  std::vector<double> r_list;
  std::vector<double> c1_list;
  std::vector<double> c2_list;
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrbeta::cli
