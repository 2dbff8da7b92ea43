#pragma once

#include "nlskdv/spacetime.hpp"

namespace nlskdv {

/// Which dispersion surface the modulation weight measures distance to:
/// Schrodinger uses tau + n^2, Airy uses tau - n^3.
enum class WeightFamily { Schrodinger, Airy };

/// Japanese bracket <x> = 1 + |x|.
inline double bracket(double x) { return 1.0 + std::abs(x); }

/// Modulation: signed distance of (n, tau) to the family's surface.
double modulation(WeightFamily family, std::int64_t n, double tau);

struct NormSpec {
  WeightFamily family = WeightFamily::Schrodinger;
  double sobolev_index = 0.0;     // k (Schrodinger) or s (Airy)
  double modulation_exponent = 0.5;  // b
};

/// Two-summand norms report both pieces; value = l2l2_part + l2l1_part.
struct NormReport {
  double value = 0.0;
  double l2l2_part = 0.0;
  double l2l1_part = 0.0;
};

/// ( sum_n int <n>^{2k} <modulation>^{2b} |f_hat|^2 dtau )^{1/2},
/// tau integral by midpoint quadrature over the stored windows.
double spacetime_norm(const SpaceTimeSpectrum& f, const NormSpec& spec);

/// Weighted-L^1 companion norm: modulation exponent fixed at -1/2 plus
/// || <n>^k f_hat / <modulation> ||_{L^2_n L^1_tau}.
NormReport companion_norm(const SpaceTimeSpectrum& f, const NormSpec& spec);

/// Modulation exponent fixed at +1/2 plus the unweighted
/// || <n>^k f_hat ||_{L^2_n L^1_tau}.
NormReport tilde_norm(const SpaceTimeSpectrum& f, const NormSpec& spec);

/// || bump * f ||_{L^4_{xt}} / spacetime_norm(f) at index 0 and modulation
/// exponent 3/8 (Schrodinger) or 1/3 (Airy).  Scale-invariant.
double strichartz_ratio(const SpaceTimeSpectrum& f, WeightFamily family);

}  // namespace nlskdv
