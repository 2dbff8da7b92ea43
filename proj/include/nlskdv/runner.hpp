#pragma once

#include <string>
#include <vector>

#include "nlskdv/config.hpp"

namespace nlskdv {

struct RunOutcome {
  int exit_code = 0;  // 0: all verdicts PASS, 1: some FAIL, 2: error
  std::vector<std::string> messages;
};

/// Expected power-law slope of a counterexample family's bilinear ratio and
/// left-hand side, with the formula it comes from.  Single source of truth
/// for every verdict that checks a fitted exponent.
struct SlopeExpectation {
  std::string lhs_formula;    // e.g. "2k"
  double lhs_slope = 0.0;
  std::string ratio_formula;  // e.g. "k-s-3/2"
  double ratio_slope = 0.0;
};
SlopeExpectation expected_slopes(const std::string& family, double k, double s);

/// Slope tolerance used by every scaling verdict.
inline constexpr double kSlopeTolerance = 0.1;

/// Dispatches the subcommand, writes manifest.txt, results.csv and (for
/// verdict-producing subcommands) summary.txt under config.output_dir.
/// Module errors are captured into the manifest and give exit code 2.
RunOutcome run(const RunConfig& config);

}  // namespace nlskdv
