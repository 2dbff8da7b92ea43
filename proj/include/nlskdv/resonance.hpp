#pragma once

#include <cstdint>

namespace nlskdv {

/// Which coupling term's frequency-interaction algebra is meant:
/// UV for the product u*v, DU2 for d_x(u1 * conj(u2)).
enum class ResonanceKind { UV, DU2 };

/// Signed sum of the three wave modulations in an interacting frequency
/// triple, exact in integer arithmetic:
///   UV:  (tau1 - n1^3) + ((tau - tau1) + (n - n1)^2) - (tau + n^2)
///          = -n1^3 + n1^2 - 2 n n1,
///   DU2: (tau - n^3) - ((tau - tau1) + (n - n1)^2) + (-tau1 + n1^2)
///          = -n^3 - n^2 + 2 n1 n.
/// Throws on overflow past 64-bit signed range.
std::int64_t resonance(ResonanceKind kind, std::int64_t n, std::int64_t n1);

}  // namespace nlskdv
