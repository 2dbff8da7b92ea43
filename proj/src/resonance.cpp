#include "nlskdv/resonance.hpp"

#include <limits>

#include "nlskdv/errors.hpp"

namespace nlskdv {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw ArgumentError("resonance: value exceeds 64-bit signed range");
  return static_cast<std::int64_t>(v);
}

}  // namespace

std::int64_t resonance(ResonanceKind kind, std::int64_t n, std::int64_t n1) {
  __int128 N = n, N1 = n1;
  __int128 r = kind == ResonanceKind::UV ? -N1 * N1 * N1 + N1 * N1 - 2 * N * N1
                                         : -N * N * N - N * N + 2 * N1 * N;
  return narrow(r);
}

}  // namespace nlskdv
