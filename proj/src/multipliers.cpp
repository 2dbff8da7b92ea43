#include "nlskdv/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "nlskdv/errors.hpp"
#include "nlskdv/parallel.hpp"
#include "nlskdv/resonance.hpp"

namespace nlskdv {

namespace {

double br(double x) { return 1.0 + std::abs(x); }

bool is_uv(MultiplierKind kind) {
  return kind == MultiplierKind::UvW0 || kind == MultiplierKind::UvW1 ||
         kind == MultiplierKind::UvW2;
}

// Comparable frequency band |n|/2 <= |n1| <= 2|n| with the threshold |n1| > 100.
bool uv_band(std::int64_t n, std::int64_t n1) {
  return 2 * std::llabs(n1) >= std::llabs(n) && std::llabs(n1) <= 2 * std::llabs(n);
}

// After the modulation integration only one modulation is known; a wave can
// carry the maximal modulation only if it is at least a third of the
// resonance the three must add up to.
bool plausible_max(double known_modulation, double res) {
  return 3.0 * std::abs(known_modulation) >= std::abs(res);
}

// Bracket powers <j>^{2k} tabulated over 0..size-1.
std::vector<double> bracket_table(std::size_t size, double exponent) {
  std::vector<double> t(size);
  for (std::size_t j = 0; j < size; ++j) t[j] = std::pow(1.0 + static_cast<double>(j), exponent);
  return t;
}

double kernel(double center, double one_minus) {
  double b = br(center);
  return std::log1p(b) / std::pow(b, one_minus);
}

struct ScanPlan {
  std::vector<std::int64_t> freqs;
  std::vector<double> tau_offsets;
};

ScanPlan make_plan(MultiplierKind kind, std::int64_t truncation) {
  std::set<std::int64_t> freqs{0};
  auto add = [&](std::int64_t v) {
    freqs.insert(v);
    freqs.insert(-v);
  };
  const std::int64_t cap = truncation * truncation;
  for (std::int64_t p = 1; p <= cap && p > 0; p *= 2) {
    add(p);
    add(p + 1);
    if (p > 1) add(p - 1);
  }
  add(99);
  add(100);
  add(101);
  // Resonant placements: the frequencies at which some |w| <= truncation
  // cancels the interaction exactly.
  for (std::int64_t m = 2; m <= truncation; m *= 2) {
    add((m - m * m) / 2);       // UV: resonance(n, m) = 0 at n = (m - m^2)/2
    add((m + m * m) / 2);
    add((m * m + m) / 2);       // DU2: resonance(m, n1) = 0 at n1 = (m^2 + m)/2
    add((m * m - m) / 2);
  }
  ScanPlan plan;
  for (std::int64_t v : freqs)
    if (std::llabs(v) <= cap) plan.freqs.push_back(v);

  std::set<double> offsets{0.0};
  const int jmax = static_cast<int>(3.0 * std::log2(static_cast<double>(truncation)));
  for (int j = 0; j <= jmax; ++j) {
    double step = std::ldexp(1.0, j);
    for (int m = -64; m <= 64; ++m) offsets.insert(m * step);
  }
  plan.tau_offsets.assign(offsets.begin(), offsets.end());
  return plan;
}

}  // namespace

MultiplierSup multiplier_sup(MultiplierKind kind, double k, double s, double one_minus,
                             std::int64_t truncation) {
  if (truncation < 64) throw PreconditionError("multiplier_sup: truncation must be >= 64");
  if (!(one_minus > 0.0) || one_minus > 1.0)
    throw PreconditionError("multiplier_sup: one_minus must lie in (0, 1]");
  if (is_uv(kind)) {
    if (!(s >= 0.0) || !(k - s <= 1.5 + 1e-12))
      throw PreconditionError("multiplier_sup: UV bound asserted only for s >= 0, k - s <= 3/2");
  } else {
    if (!(k > 0.0) || !(1.0 + s <= 4.0 * k + 1e-12) || !(k - s >= -0.5 - 1e-12))
      throw PreconditionError(
          "multiplier_sup: DU2 bound asserted only for k > 0, 1 + s <= 4k, k - s >= -1/2");
  }

  const std::int64_t T = truncation;
  const auto table_size = static_cast<std::size_t>(2 * T + 2 * T * T + 2);
  // Frequencies entering brackets can reach |freq| + T <= T^2 + T; the table
  // covers every |difference| that appears.
  std::vector<double> br2k = bracket_table(table_size, 2.0 * k);
  std::vector<double> br2s = bracket_table(table_size, 2.0 * s);

  const ScanPlan plan = make_plan(kind, T);

  auto eval = [&](std::int64_t freq, double tau) -> double {
    const double fd = static_cast<double>(freq);
    switch (kind) {
      case MultiplierKind::UvW0: {
        // sup variable is the output wave (n, tau); lambda0 = tau + n^2.
        double lam0 = tau + fd * fd;
        double pref = br2k[static_cast<std::size_t>(std::llabs(freq))] / br(lam0);
        double sum = 0.0;
        for (std::int64_t n1 = -T; n1 <= T; ++n1) {
          bool in_region;
          if (std::llabs(n1) <= 100) {
            in_region = true;  // low output-side frequency
          } else if (!uv_band(freq, n1)) {
            in_region = true;  // separated frequencies
          } else {
            in_region = plausible_max(lam0, static_cast<double>(resonance(ResonanceKind::UV, freq, n1)));
          }
          if (!in_region) continue;
          double x1 = static_cast<double>(n1);
          double p = x1 * x1 * x1 - x1 * x1 + 2.0 * fd * x1 - (tau + fd * fd);
          double w = 1.0 / (br2s[static_cast<std::size_t>(std::llabs(n1))] *
                            br2k[static_cast<std::size_t>(std::llabs(freq - n1))]);
          sum += w * kernel(p, one_minus);
        }
        return pref * sum;
      }
      case MultiplierKind::UvW1: {
        // sup variable is the Airy wave (n1, tau1); lambda1 = tau1 - n1^3.
        if (std::llabs(freq) <= 100) return 0.0;
        double lam1 = tau - fd * fd * fd;
        double pref = 1.0 / (br2s[static_cast<std::size_t>(std::llabs(freq))] * br(lam1));
        double sum = 0.0;
        for (std::int64_t n = -T; n <= T; ++n) {
          if (!uv_band(n, freq)) continue;
          if (!plausible_max(lam1, static_cast<double>(resonance(ResonanceKind::UV, n, freq))))
            continue;
          double xn = static_cast<double>(n);
          double q = tau - fd * fd + 2.0 * fd * xn;
          double w = br2k[static_cast<std::size_t>(std::llabs(n))] /
                     br2k[static_cast<std::size_t>(std::llabs(n - freq))];
          sum += w * kernel(q, one_minus);
        }
        return pref * sum;
      }
      case MultiplierKind::UvW2: {
        // sup variable is the second Schrodinger wave (n2, tau2);
        // lambda2 = tau2 - n2^2, and n = n1 - n2.
        double lam2 = tau - fd * fd;
        double pref = 1.0 / (br2k[static_cast<std::size_t>(std::llabs(freq))] * br(lam2));
        double sum = 0.0;
        for (std::int64_t n1 = -T; n1 <= T; ++n1) {
          if (std::llabs(n1) <= 100) continue;
          std::int64_t n = n1 - freq;
          if (!uv_band(n, n1)) continue;
          if (!plausible_max(lam2, static_cast<double>(resonance(ResonanceKind::UV, n, n1))))
            continue;
          double x1 = static_cast<double>(n1);
          double rr = x1 * x1 * x1 + x1 * x1 - 2.0 * fd * x1 - (tau - fd * fd);
          double w = br2k[static_cast<std::size_t>(std::llabs(n1 - freq))] /
                     br2s[static_cast<std::size_t>(std::llabs(n1))];
          sum += w * kernel(rr, one_minus);
        }
        return pref * sum;
      }
      case MultiplierKind::Du2V0: {
        // sup variable is the Airy output wave (n, tau); lambda0 = tau - n^3.
        double lam0 = tau - fd * fd * fd;
        double pref =
            fd * fd * std::pow(br(fd), 2.0 * s) / br(lam0);
        double sum = 0.0;
        for (std::int64_t n1 = -T; n1 <= T; ++n1) {
          bool in_region;
          if (std::llabs(freq) <= 100) {
            in_region = true;  // low output frequency
          } else if (16 * std::llabs(n1) > freq * freq) {
            in_region = true;  // input frequency comparable to n^2
          } else {
            in_region =
                plausible_max(lam0, static_cast<double>(resonance(ResonanceKind::DU2, freq, n1)));
          }
          if (!in_region) continue;
          double x1 = static_cast<double>(n1);
          double aa = tau + fd * fd - 2.0 * fd * x1;
          double w = 1.0 / (br2k[static_cast<std::size_t>(std::llabs(n1))] *
                            br2k[static_cast<std::size_t>(std::llabs(freq - n1))]);
          sum += w * kernel(aa, one_minus);
        }
        return pref * sum;
      }
      case MultiplierKind::Du2V1: {
        // sup variable is the first Schrodinger wave (n1, tau1);
        // lambda1 = -tau1 + n1^2.
        double lam1 = fd * fd - tau;
        double pref = 1.0 / (br2k[static_cast<std::size_t>(std::llabs(freq))] * br(lam1));
        double sum = 0.0;
        for (std::int64_t n = -T; n <= T; ++n) {
          if (std::llabs(n) <= 100) continue;
          if (16 * std::llabs(freq) > n * n) continue;
          if (!plausible_max(lam1, static_cast<double>(resonance(ResonanceKind::DU2, n, freq))))
            continue;
          double xn = static_cast<double>(n);
          double bb = tau - xn * xn * xn - (xn - fd) * (xn - fd);
          double w = xn * xn * std::pow(br(xn), 2.0 * s) /
                     br2k[static_cast<std::size_t>(std::llabs(freq - n))];
          sum += w * kernel(bb, one_minus);
        }
        return pref * sum;
      }
      case MultiplierKind::Du2V2: {
        // sup variable is the conjugated Schrodinger wave (n2, tau2);
        // lambda2 = -tau2 + n2^2, and n1 = n + n2.
        double lam2 = fd * fd - tau;
        double pref = 1.0 / (br2k[static_cast<std::size_t>(std::llabs(freq))] * br(lam2));
        double sum = 0.0;
        for (std::int64_t n = -T; n <= T; ++n) {
          if (std::llabs(n) <= 100) continue;
          std::int64_t n1 = n + freq;
          if (16 * std::llabs(n1) > n * n) continue;
          if (!plausible_max(lam2, static_cast<double>(resonance(ResonanceKind::DU2, n, n1))))
            continue;
          double xn = static_cast<double>(n);
          double cc = tau - (xn + fd) * (xn + fd) + xn * xn * xn;
          double w = xn * xn * std::pow(br(xn), 2.0 * s) /
                     br2k[static_cast<std::size_t>(std::llabs(n + freq))];
          sum += w * kernel(cc, one_minus);
        }
        return pref * sum;
      }
    }
    return 0.0;
  };

  auto anchor = [&](std::int64_t freq) -> double {
    double fd = static_cast<double>(freq);
    switch (kind) {
      case MultiplierKind::UvW0: return -fd * fd;
      case MultiplierKind::UvW1: return fd * fd * fd;
      case MultiplierKind::UvW2: return fd * fd;
      case MultiplierKind::Du2V0: return fd * fd * fd;
      case MultiplierKind::Du2V1: return fd * fd;
      case MultiplierKind::Du2V2: return fd * fd;
    }
    return 0.0;
  };

  struct Local {
    double best = 0.0;
    double best_tau = 0.0;
  };
  std::vector<Local> locals(plan.freqs.size());
  parallel_for(plan.freqs.size(), [&](std::size_t i) {
    std::int64_t freq = plan.freqs[i];
    double base = anchor(freq);
    Local loc;
    for (double off : plan.tau_offsets) {
      double v = eval(freq, base + off);
      if (v > loc.best) {
        loc.best = v;
        loc.best_tau = base + off;
      }
    }
    locals[i] = loc;
  });

  MultiplierSup out;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    if (locals[i].best > out.sup_value) {
      out.sup_value = locals[i].best;
      out.argmax_freq = plan.freqs[i];
      out.argmax_tau = locals[i].best_tau;
    }
  }
  return out;
}

}  // namespace nlskdv
