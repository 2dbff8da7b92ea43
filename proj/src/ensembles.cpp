#include "nlskdv/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "nlskdv/parallel.hpp"
#include "nlskdv/torus.hpp"

namespace nlskdv {

namespace {

// Box-Muller on the engine's uniforms; self-contained so streams are
// reproducible independent of the standard library's distributions.
cplx gaussian_pair(std::mt19937_64& rng) {
  double u1 = 0.0;
  while (u1 == 0.0) u1 = std::ldexp(static_cast<double>(rng() >> 11), -53);
  double u2 = std::ldexp(static_cast<double>(rng() >> 11), -53);
  double r = std::sqrt(-2.0 * std::log(u1));
  return cplx(r * std::cos(2.0 * TorusGrid::pi() * u2), r * std::sin(2.0 * TorusGrid::pi() * u2));
}

}  // namespace

SpaceTimeSpectrum make_random_spectrum(std::uint64_t seed, WeightFamily family, int mode_range,
                                       int active_modes, double dtau) {
  if (mode_range < 1) throw ArgumentError("make_random_spectrum: mode_range must be >= 1");
  std::mt19937_64 rng(seed);
  std::set<std::int64_t> chosen;
  while (static_cast<int>(chosen.size()) < active_modes) {
    auto span = static_cast<std::uint64_t>(2 * mode_range + 1);
    chosen.insert(static_cast<std::int64_t>(rng() % span) - mode_range);
  }

  SpaceTimeSpectrum out(dtau);
  const double halfwidth = 8.0;
  for (std::int64_t n : chosen) {
    double x = static_cast<double>(n);
    double center = family == WeightFamily::Schrodinger ? -x * x : x * x * x;
    double lo = std::round((center - halfwidth) / dtau) * dtau;
    auto count = static_cast<std::size_t>(std::llround(2.0 * halfwidth / dtau));
    std::vector<cplx> vals(count);
    for (std::size_t m = 0; m < count; ++m) {
      double tau = lo + (m + 0.5) * dtau;
      vals[m] = gaussian_pair(rng) / bracket(modulation(family, n, tau));
    }
    out.add_mode(n, lo, std::move(vals));
  }
  return out;
}

double ensemble_ratio_max(std::uint64_t seed, WeightFamily family, int mode_range, int members,
                          int active_modes, double dtau) {
  std::vector<double> ratios(members);
  parallel_for(static_cast<std::size_t>(members), [&](std::size_t i) {
    SpaceTimeSpectrum f = make_random_spectrum(seed + 1000 * i, family, mode_range, active_modes, dtau);
    ratios[i] = strichartz_ratio(f, family);
  });
  return *std::max_element(ratios.begin(), ratios.end());
}

}  // namespace nlskdv
