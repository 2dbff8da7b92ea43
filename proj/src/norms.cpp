#include "nlskdv/norms.hpp"

#include <cmath>

namespace nlskdv {

double modulation(WeightFamily family, std::int64_t n, double tau) {
  double x = static_cast<double>(n);
  return family == WeightFamily::Schrodinger ? tau + x * x : tau - x * x * x;
}

double spacetime_norm(const SpaceTimeSpectrum& f, const NormSpec& spec) {
  const double dtau = f.dtau();
  double sum = 0.0;
  for (const auto& mode : f.modes()) {
    double nk = std::pow(bracket(static_cast<double>(mode.n)), 2.0 * spec.sobolev_index);
    double mode_sum = 0.0;
    for (std::size_t m = 0; m < mode.values.size(); ++m) {
      double amp2 = std::norm(mode.values[m]);
      if (amp2 == 0.0) continue;
      double w = std::pow(bracket(modulation(spec.family, mode.n, mode.tau(m, dtau))),
                          2.0 * spec.modulation_exponent);
      mode_sum += w * amp2;
    }
    sum += nk * mode_sum * dtau;
  }
  return std::sqrt(sum);
}

NormReport companion_norm(const SpaceTimeSpectrum& f, const NormSpec& spec) {
  NormSpec fixed = spec;
  fixed.modulation_exponent = -0.5;
  NormReport report;
  report.l2l2_part = spacetime_norm(f, fixed);

  const double dtau = f.dtau();
  double sum = 0.0;
  for (const auto& mode : f.modes()) {
    double nk = std::pow(bracket(static_cast<double>(mode.n)), spec.sobolev_index);
    double l1 = 0.0;
    for (std::size_t m = 0; m < mode.values.size(); ++m) {
      double amp = std::abs(mode.values[m]);
      if (amp == 0.0) continue;
      l1 += amp / bracket(modulation(spec.family, mode.n, mode.tau(m, dtau)));
    }
    double part = nk * l1 * dtau;
    sum += part * part;
  }
  report.l2l1_part = std::sqrt(sum);
  report.value = report.l2l2_part + report.l2l1_part;
  return report;
}

NormReport tilde_norm(const SpaceTimeSpectrum& f, const NormSpec& spec) {
  NormSpec fixed = spec;
  fixed.modulation_exponent = 0.5;
  NormReport report;
  report.l2l2_part = spacetime_norm(f, fixed);

  const double dtau = f.dtau();
  double sum = 0.0;
  for (const auto& mode : f.modes()) {
    double nk = std::pow(bracket(static_cast<double>(mode.n)), spec.sobolev_index);
    double l1 = 0.0;
    for (const auto& v : mode.values) l1 += std::abs(v);
    double part = nk * l1 * dtau;
    sum += part * part;
  }
  report.l2l1_part = std::sqrt(sum);
  report.value = report.l2l2_part + report.l2l1_part;
  return report;
}

double strichartz_ratio(const SpaceTimeSpectrum& f, WeightFamily family) {
  NormSpec spec{family, 0.0, family == WeightFamily::Schrodinger ? 3.0 / 8.0 : 1.0 / 3.0};
  double denom = spacetime_norm(f, spec);
  if (denom == 0.0) throw DegenerateInputError("strichartz_ratio: zero spectrum");
  return lebesgue_norm(f, 4, true) / denom;
}

}  // namespace nlskdv
