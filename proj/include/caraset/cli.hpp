#pragma once

// Batch front end: parses arguments, dispatches to the library and writes a
// report. Exit codes: 0 success, 2 classification verdict NeitherStructure,
// 1 input or solver error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caraset/report.hpp"
#include "caraset/verifier.hpp"

namespace caraset::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNeither = 2;

enum class Command { Classify, Verify, Scan, Extremal, FlatDisk };
std::string_view to_string(Command c) noexcept;

struct RunConfig {
  Command command = Command::Classify;
  std::string input;
  /// Empty means standard output.
  std::string output;
  double tol = 1e-9;
  int degree = 4;
  int grid = 4096;
  int pairs = 200;
  std::uint64_t seed = 0;
  double threshold = kDefaultGapThreshold;
  Format format = Format::Text;
  /// 0 means available hardware parallelism.
  int threads = 0;
  /// Point of the variety moved to the origin (6 floats); empty means the origin.
  std::vector<double> point;
  /// extremal: lambda then mu as 12 floats (re, im per coordinate).
  std::vector<double> pair;
  /// flatdisk: direction as 6 floats.
  std::vector<double> dir;
  int samples = 256;

  /// Throws InvalidArgument naming the offending parameter.
  void validate() const;
};

/// Applies a JSON config object. Unknown keys are an InvalidArgument error;
/// keys listed in `skip` (set explicitly on the command line) are left alone.
void apply_config_json(RunConfig& config, std::string_view json_text,
                       const std::vector<std::string>& skip = {});

/// Executes a validated configuration, writing the report to `out` (or the
/// configured file) and diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry: parsing, CARASET_SEED override, run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace caraset::cli
