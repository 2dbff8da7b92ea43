#pragma once

#include <cstdint>

namespace nlskdv {

/// The six reduced multiplier sums behind the coupling-term bounds, one per
/// duality route (0: output wave, 1: first input wave, 2: second input wave)
/// and coupling term (UV for u*v, DU2 for d_x(u1 conj u2)).  Each sum is the
/// original weighted double integral after the modulation variable has been
/// integrated out, leaving
///     prefactor(freq, tau) * sum_w weight(w) * log(1 + <P(w)>) / <P(w)>^{one_minus}
/// with P the per-route center polynomial and the sum restricted to that
/// route's frequency/modulation region.
enum class MultiplierKind { UvW0, UvW1, UvW2, Du2V0, Du2V1, Du2V2 };

struct MultiplierSup {
  double sup_value = 0.0;
  std::int64_t argmax_freq = 0;
  double argmax_tau = 0.0;
};

/// Scans (freq, tau) over a heuristic set concentrated near each kind's
/// characteristic surface and near resonances; the lattice sum runs over
/// |w| <= truncation.  The result is a lower bound on the true supremum.
/// Preconditions: truncation >= 64, one_minus in (0, 1], and (k, s) inside
/// the validity region (UV: s >= 0 and k - s <= 3/2; DU2: k > 0, 1 + s <= 4k
/// and k - s >= -1/2); a PreconditionError is thrown outside it.
MultiplierSup multiplier_sup(MultiplierKind kind, double k, double s, double one_minus,
                             std::int64_t truncation);

}  // namespace nlskdv
