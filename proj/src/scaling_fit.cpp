#include "nlskdv/scaling_fit.hpp"

#include <cmath>

#include "nlskdv/errors.hpp"

namespace nlskdv {

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw ArgumentError("fit_scaling: need at least 4 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].second > 0.0)) throw ArgumentError("fit_scaling: values must be positive");
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      throw ArgumentError("fit_scaling: N must be strictly increasing");
  }

  const auto m = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [n, v] : samples) {
    double x = std::log2(n), y = std::log2(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ScalingFit fit;
  fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.exponent * sx) / m;
  double ss = 0.0;
  for (const auto& [n, v] : samples) {
    double r = std::log2(v) - (fit.exponent * std::log2(n) + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  fit.sample_points = samples;
  return fit;
}

}  // namespace nlskdv
