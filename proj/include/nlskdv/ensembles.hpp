#pragma once

#include <cstdint>

#include "nlskdv/norms.hpp"
#include "nlskdv/spacetime.hpp"

namespace nlskdv {

/// Seeded random space-time spectrum with `active_modes` distinct modes in
/// [-mode_range, mode_range], each carrying complex gaussian samples on a
/// window around its dispersion surface, damped by 1 / <modulation> so the
/// content concentrates near the surface the way solutions do.
SpaceTimeSpectrum make_random_spectrum(std::uint64_t seed, WeightFamily family, int mode_range,
                                       int active_modes = 8, double dtau = 0.125);

/// Max Strichartz ratio over a seeded ensemble.
double ensemble_ratio_max(std::uint64_t seed, WeightFamily family, int mode_range, int members,
                          int active_modes = 8, double dtau = 0.125);

}  // namespace nlskdv
