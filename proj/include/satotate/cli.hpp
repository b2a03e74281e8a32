#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "satotate/equidist.hpp"
#include "satotate/frobenius.hpp"

namespace satotate::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitUsage = 2,  // bad flags, unknown model, singular curve
  kExitInconclusive = 3,
  kExitData = 4,   // malformed or missing input, Hasse violation
};

enum class Command { generate, ingest, test, parity, report };

struct RunConfig {
  Command command = Command::test;
  std::optional<CurveSpec> curve;
  std::int64_t prime_bound = 100000;
  std::string model = "auto";
  int char_cap = kDefaultCharCap;
  double z = kDefaultZ;
  std::uint64_t seed = 0;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  bool negate_ap = false;
  /// Haar-sample this many points instead of reading Frobenius data.
  std::optional<std::size_t> synthetic;
  unsigned threads = 1;
};

/// Parses "a,b" into a curve (singular curves are accepted here and rejected
/// by the commands).
CurveSpec parse_curve(const std::string& text);

int run_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_test(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_parity(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatch on cfg.command.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full pipeline result of the `test` command.
nlohmann::json test_report(const RunConfig& cfg, int& exit_code);

/// Command-line entry point.
int main(int argc, char** argv);

}  // namespace satotate::cli
