#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace nlskdv {

/// Least-squares power-law fit value ~ C * N^exponent on (log2 N, log2 value).
struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;  // log2 C
  double residual = 0.0;   // RMS of log2 residuals
  std::vector<std::pair<double, double>> sample_points;
};

/// Requires >= 4 samples, strictly increasing N, strictly positive values.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& samples);

}  // namespace nlskdv
