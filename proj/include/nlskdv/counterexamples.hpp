#pragma once

#include <utility>

#include "nlskdv/norms.hpp"
#include "nlskdv/spacetime.hpp"

namespace nlskdv {

/// The four extremal single-mode pairs driving the bilinear estimates:
///   UV1   : u at (-N^2-N)/2, v at N        (low-regularity direction s)
///   UV2   : u at 0,          v at N        (gap direction k - s)
///   DU2_1 : u1 at (-N^2+N)/2, u2 at (-N^2-N)/2
///   DU2_2 : u1 at 0,          u2 at -N
/// u-factors carry chi profiles on tau = -n^2, the v factor on tau = n^3.
enum class CounterexampleFamily { UV1, UV2, DU2_1, DU2_2 };

struct CounterexampleSpec {
  CounterexampleFamily family = CounterexampleFamily::UV1;
  std::int64_t N = 8;
  double k = 0.0;
  double s = 0.0;

  void validate() const;
};

/// Returns the pair (u, v) or (u1, u2) as space-time spectra.
std::pair<SpaceTimeSpectrum, SpaceTimeSpectrum> build_counterexample(const CounterexampleSpec& spec,
                                                                     double dtau = 0.125);

struct BilinearRatio {
  double lhs = 0.0;   // output norm at modulation exponent b - 1
  double rhs = 0.0;   // product of the input norms at exponent b
  double ratio = 0.0;
};

/// UV families: lhs = ||u v||_{X^{k, b-1}}, rhs = ||u||_{X^{k,b}} ||v||_{Y^{s,b}}.
/// DU2 families: lhs = ||d_x(u1 conj(u2))||_{Y^{s, b-1}} (conjugate flip plus
/// the |n| multiplier), rhs = ||u1||_{X^{k,b}} ||u2||_{X^{k,b}}.
BilinearRatio bilinear_ratio(const CounterexampleSpec& spec, double b = 0.5, double dtau = 0.125);

}  // namespace nlskdv
