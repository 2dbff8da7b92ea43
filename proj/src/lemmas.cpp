#include "nlskdv/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "nlskdv/errors.hpp"

namespace nlskdv {

namespace {

double br(double x) { return 1.0 + std::abs(x); }

// Adaptive Simpson with absolute/relative tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

bool integral_like(double x) { return std::abs(x) < 9.0e15 && x == std::round(x); }

}  // namespace

CalculusIntegral calculus_integral(double theta, double theta_tilde, double a) {
  if (!(theta > 0.0) || !(theta_tilde > 0.0) || !(theta + theta_tilde > 1.0))
    throw DivergentInputError("calculus_integral: need theta, theta_tilde > 0 and sum > 1");

  auto integrand = [&](double kappa) {
    return std::pow(br(kappa), -theta) * std::pow(br(kappa - a), -theta_tilde);
  };

  const double R = std::max(10.0 * std::abs(a), 1.0e3);
  // Split at the kinks kappa = 0 and kappa = a.
  double p0 = std::min(0.0, a), p1 = std::max(0.0, a);
  const double tol = 1e-11;
  double value = integrate(integrand, -R, p0, tol) + integrate(integrand, p0, p1, tol) +
                 integrate(integrand, p1, R, tol);

  // Tail: for |kappa| >= R >= 10|a|, <kappa - a> >= 0.9 <kappa>.
  double decay = theta + theta_tilde;
  double tail = 2.0 * std::pow(0.9, -std::max(theta, theta_tilde)) *
                std::pow(1.0 + R, 1.0 - decay) / (decay - 1.0);

  CalculusIntegral out;
  out.integral = value + tail;
  out.paper_bound = std::log(1.0 + br(a)) / std::pow(br(a), decay - 1.0);
  out.ratio = out.integral / out.paper_bound;
  return out;
}

SeriesSum polynomial_series_cubic(double e, double f, double g, double theta, std::int64_t cutoff) {
  if (!(theta > 1.0 / 3.0))
    throw DivergentInputError("polynomial_series_cubic: need theta > 1/3");
  if (cutoff < 1000) throw ArgumentError("polynomial_series_cubic: cutoff too small");

  // Center the window on the inflection point x = -e/3 so that integer
  // translations of the polynomial reproduce the same lattice values.
  const auto center = static_cast<std::int64_t>(std::llround(-e / 3.0));

  // Recentred coefficients: p(center + y) = y^3 + B2 y^2 + B1 y + B0.
  const double c = static_cast<double>(center);
  const double B2 = 3.0 * c + e;
  const double B1 = 3.0 * c * c + 2.0 * c * e + f;
  const double B0 = ((c + e) * c + f) * c + g;

  // |p| >= y^3/2 once y dominates the lower-order recentred terms.
  double y0 = std::max({6.0 * std::abs(B2), std::sqrt(6.0 * std::abs(B1)),
                        std::cbrt(6.0 * std::abs(B0)), 2.0});
  std::int64_t half = std::max<std::int64_t>(cutoff, static_cast<std::int64_t>(y0) + 1);
  if (half > 20000000)
    throw ArgumentError("polynomial_series_cubic: coefficients too large for the tail bound");

  const bool exact = integral_like(e) && integral_like(f) && integral_like(g);
  double sum = 0.0;
  for (std::int64_t m = center - half; m <= center + half; ++m) {
    double pm;
    if (exact) {
      __int128 mm = m;
      __int128 p = mm * mm * mm + static_cast<__int128>(e) * mm * mm +
                   static_cast<__int128>(f) * mm + static_cast<__int128>(g);
      pm = static_cast<double>(p);
    } else {
      double y = static_cast<double>(m - center);
      pm = ((y + B2) * y + B1) * y + B0;
    }
    sum += std::pow(br(pm), -theta);
  }

  SeriesSum out;
  out.partial_sum = sum;
  double x = static_cast<double>(half);
  out.tail_bound = 2.0 * std::pow(2.0, theta) * std::pow(x, 1.0 - 3.0 * theta) / (3.0 * theta - 1.0);
  return out;
}

SeriesSum polynomial_series_linear(std::int64_t n1, double r, double theta) {
  if (!(theta > 0.5)) throw DivergentInputError("polynomial_series_linear: need theta > 1/2");
  if (n1 == 0) throw DivergentInputError("polynomial_series_linear: need n1 != 0");

  const std::int64_t a = std::abs(n1);
  const std::int64_t lo = (a + 1) / 2, hi = 2 * a;
  const bool exact = integral_like(r);
  double sum = 0.0;
  auto accumulate = [&](std::int64_t n) {
    double q;
    if (exact) {
      __int128 v = 2 * static_cast<__int128>(n1) * n - static_cast<__int128>(n1) * n1 +
                   static_cast<__int128>(r);
      q = static_cast<double>(v);
    } else {
      q = 2.0 * static_cast<double>(n1) * static_cast<double>(n) -
          static_cast<double>(n1) * static_cast<double>(n1) + r;
    }
    sum += std::pow(br(q), -theta);
  };
  for (std::int64_t n = lo; n <= hi; ++n) {
    accumulate(n);
    accumulate(-n);
  }
  return SeriesSum{sum, 0.0};
}

double dyadic_measure(ResonanceKind kind, std::int64_t n, double M, double eps) {
  if (!(M >= 1.0)) throw ArgumentError("dyadic_measure: need M >= 1");

  const double an = std::abs(static_cast<double>(n));
  std::vector<std::pair<double, double>> intervals;

  auto push = [&](double center, double halfwidth) {
    intervals.emplace_back(center - halfwidth, center + halfwidth);
  };

  if (kind == ResonanceKind::UV) {
    const std::int64_t lo = (std::abs(n) + 1) / 2, hi = 2 * std::abs(n);
    for (std::int64_t ar = lo; ar <= hi; ++ar) {
      for (std::int64_t r : {ar, -ar}) {
        __int128 c = static_cast<__int128>(r) * r * r - static_cast<__int128>(r) * r -
                     2 * static_cast<__int128>(n) * r;
        push(static_cast<double>(c), std::pow(std::abs(static_cast<double>(r)), 2.0 - eps));
      }
    }
  } else {
    const std::int64_t rmax = (n * n) / 16;
    const double halfwidth = std::pow(an, 1.0 - eps);
    for (std::int64_t r = -rmax; r <= rmax; ++r) {
      __int128 c = static_cast<__int128>(n) * n * n - static_cast<__int128>(n) * n -
                   2 * static_cast<__int128>(n) * r;
      push(static_cast<double>(c), halfwidth);
    }
  }

  // Clip to {M <= |mu| <= 2M} and merge.
  std::vector<std::pair<double, double>> clipped;
  auto clip = [&](double lo, double hi) {
    for (auto [blo, bhi] : {std::pair<double, double>{M, 2.0 * M}, {-2.0 * M, -M}}) {
      double l = std::max(lo, blo), h = std::min(hi, bhi);
      if (l < h) clipped.emplace_back(l, h);
    }
  };
  for (const auto& [lo, hi] : intervals) clip(lo, hi);
  if (clipped.empty()) return 0.0;

  std::sort(clipped.begin(), clipped.end());
  double measure = 0.0;
  double cur_lo = clipped[0].first, cur_hi = clipped[0].second;
  for (std::size_t i = 1; i < clipped.size(); ++i) {
    if (clipped[i].first <= cur_hi) {
      cur_hi = std::max(cur_hi, clipped[i].second);
    } else {
      measure += cur_hi - cur_lo;
      cur_lo = clipped[i].first;
      cur_hi = clipped[i].second;
    }
  }
  measure += cur_hi - cur_lo;
  return measure;
}

}  // namespace nlskdv
