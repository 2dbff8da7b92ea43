#pragma once

#include <cstdint>

#include "nlskdv/resonance.hpp"

namespace nlskdv {

struct CalculusIntegral {
  double integral = 0.0;     // quadrature over |kappa| <= R plus analytic tail bound
  double paper_bound = 0.0;  // log(1 + <a>) / <a>^{theta + theta_tilde - 1}
  double ratio = 0.0;
};

/// int dkappa / (<kappa>^theta <kappa - a>^theta_tilde) over the real line.
/// Requires theta, theta_tilde > 0 and theta + theta_tilde > 1.
CalculusIntegral calculus_integral(double theta, double theta_tilde, double a);

struct SeriesSum {
  double partial_sum = 0.0;
  double tail_bound = 0.0;
};

/// sum_m <p(m)>^{-theta} over the integers for the monic cubic
/// p(x) = x^3 + e x^2 + f x + g; requires theta > 1/3.  The summation window
/// of half-width `cutoff` is centered on the inflection point, so integer
/// translations of p leave the value unchanged.
SeriesSum polynomial_series_cubic(double e, double f, double g, double theta,
                                  std::int64_t cutoff = 100000);

/// sum over the band |n| in [|n1|/2, 2|n1|] of <q(n)>^{-theta} for
/// q(x) = 2 n1 x - n1^2 + r; requires theta > 1/2 and n1 != 0.  The band is
/// finite, so the reported tail bound is zero.
SeriesSum polynomial_series_linear(std::int64_t n1, double r, double theta);

/// Lebesgue measure of the union of resonance neighborhoods inside the
/// dyadic block {M <= |mu| <= 2M}:
///   UV : centers r^3 - r^2 - 2 n r, half-width |r|^{2 - eps}, |n|/2 <= |r| <= 2|n|;
///   DU2: centers n^3 - n^2 - 2 n r, half-width |n|^{1 - eps}, |r| <= n^2 / 16.
/// Computed exactly by interval merging.
double dyadic_measure(ResonanceKind kind, std::int64_t n, double M, double eps);

}  // namespace nlskdv
