#include "nlskdv/spacetime.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "nlskdv/torus.hpp"

namespace nlskdv {

namespace {

constexpr double kLatticeTol = 1e-9;

// Round x to the window lattice of spacing dtau.
double snap(double x, double dtau) { return std::round(x / dtau) * dtau; }

// Integer lattice shift between two window starts; throws if misaligned.
std::int64_t lattice_shift(double lo_from, double lo_to, double dtau) {
  double raw = (lo_from - lo_to) / dtau;
  double rounded = std::round(raw);
  if (std::abs(raw - rounded) > kLatticeTol)
    throw ArgumentError("SpaceTimeSpectrum: tau windows are not lattice-aligned");
  return static_cast<std::int64_t>(rounded);
}

}  // namespace

SpaceTimeSpectrum::SpaceTimeSpectrum(double dtau) : dtau_(dtau) {
  if (!(dtau > 0.0) || dtau > 0.25)
    throw ArgumentError("SpaceTimeSpectrum: dtau must lie in (0, 1/4]");
}

std::size_t SpaceTimeSpectrum::total_samples() const {
  std::size_t n = 0;
  for (const auto& m : modes_) n += m.values.size();
  return n;
}

void SpaceTimeSpectrum::add_mode(std::int64_t n, double lo, std::vector<cplx> values) {
  if (values.empty()) return;
  auto it = std::lower_bound(modes_.begin(), modes_.end(), n,
                             [](const ModeTrack& t, std::int64_t key) { return t.n < key; });
  if (it == modes_.end() || it->n != n) {
    modes_.insert(it, ModeTrack{n, lo, std::move(values)});
    return;
  }
  // Merge on the shared lattice; the hull window covers both.
  double new_lo = std::min(lo, it->lo);
  std::int64_t count = std::max(
      lattice_shift(lo, new_lo, dtau_) + static_cast<std::int64_t>(values.size()),
      lattice_shift(it->lo, new_lo, dtau_) + static_cast<std::int64_t>(it->values.size()));
  std::vector<cplx> merged(static_cast<std::size_t>(count), cplx(0.0, 0.0));
  std::int64_t off_old = lattice_shift(it->lo, new_lo, dtau_);
  for (std::size_t m = 0; m < it->values.size(); ++m) merged[off_old + m] = it->values[m];
  std::int64_t off_new = lattice_shift(lo, new_lo, dtau_);
  for (std::size_t m = 0; m < values.size(); ++m) merged[off_new + m] += values[m];
  it->lo = new_lo;
  it->values = std::move(merged);
}

const ModeTrack* SpaceTimeSpectrum::find(std::int64_t n) const {
  auto it = std::lower_bound(modes_.begin(), modes_.end(), n,
                             [](const ModeTrack& t, std::int64_t key) { return t.n < key; });
  if (it == modes_.end() || it->n != n) return nullptr;
  return &*it;
}

SpaceTimeSpectrum& SpaceTimeSpectrum::operator*=(cplx c) {
  for (auto& mode : modes_)
    for (auto& v : mode.values) v *= c;
  return *this;
}

SpaceTimeSpectrum operator*(cplx c, SpaceTimeSpectrum f) { return f *= c; }

SpaceTimeSpectrum operator+(const SpaceTimeSpectrum& a, const SpaceTimeSpectrum& b) {
  if (std::abs(a.dtau() - b.dtau()) > kLatticeTol)
    throw ArgumentError("SpaceTimeSpectrum: dtau mismatch");
  SpaceTimeSpectrum out = a;
  for (const auto& mode : b.modes()) out.add_mode(mode.n, mode.lo, mode.values);
  return out;
}

SpaceTimeSpectrum make_chi_spectrum(double dtau, std::int64_t n, double center, double halfwidth) {
  if (halfwidth < 1.5) throw ArgumentError("make_chi_spectrum: window too narrow for chi");
  SpaceTimeSpectrum out(dtau);
  double lo = snap(center - halfwidth, dtau);
  auto count = static_cast<std::size_t>(std::llround(2.0 * halfwidth / dtau));
  std::vector<cplx> vals(count, cplx(0.0, 0.0));
  for (std::size_t m = 0; m < count; ++m) {
    double tau = lo + (m + 0.5) * dtau;
    if (std::abs(tau - center) <= 1.0) vals[m] = cplx(1.0, 0.0);
  }
  out.add_mode(n, lo, std::move(vals));
  return out;
}

SpaceTimeSpectrum convolve_spacetime(const SpaceTimeSpectrum& f, const SpaceTimeSpectrum& g) {
  if (std::abs(f.dtau() - g.dtau()) > kLatticeTol)
    throw ArgumentError("convolve_spacetime: dtau mismatch");
  const double dtau = f.dtau();
  SpaceTimeSpectrum out(dtau);
  for (const auto& mf : f.modes()) {
    for (const auto& mg : g.modes()) {
      // Midpoints add to lo_f + lo_g + (mi + mj + 1) dtau: a midpoint grid
      // for the window starting at lo_f + lo_g + dtau/2.
      const std::size_t kf = mf.values.size(), kg = mg.values.size();
      std::vector<cplx> vals(kf + kg - 1, cplx(0.0, 0.0));
      for (std::size_t i = 0; i < kf; ++i) {
        if (mf.values[i] == cplx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < kg; ++j) vals[i + j] += mf.values[i] * mg.values[j];
      }
      for (auto& v : vals) v *= dtau;
      out.add_mode(mf.n + mg.n, mf.lo + mg.lo + 0.5 * dtau, std::move(vals));
    }
  }
  return out;
}

SpaceTimeSpectrum conjugate_flip(const SpaceTimeSpectrum& f) {
  SpaceTimeSpectrum out(f.dtau());
  for (const auto& mode : f.modes()) {
    std::vector<cplx> vals(mode.values.size());
    for (std::size_t m = 0; m < vals.size(); ++m)
      vals[m] = std::conj(mode.values[vals.size() - 1 - m]);
    out.add_mode(-mode.n, -mode.hi(f.dtau()), std::move(vals));
  }
  return out;
}

SpaceTimeSpectrum mode_derivative(const SpaceTimeSpectrum& f) {
  SpaceTimeSpectrum result(f.dtau());
  for (const auto& mode : f.modes()) {
    std::vector<cplx> vals = mode.values;
    cplx sym(0.0, static_cast<double>(mode.n));
    for (auto& v : vals) v *= sym;
    result.add_mode(mode.n, mode.lo, std::move(vals));
  }
  return result;
}

double smooth_bump(double t) {
  auto h = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return h(2.0 - a) / (h(2.0 - a) + h(a - 1.0));
}

namespace {

// Cached FFTW plans for the time-direction reconstructions.
class TimeFft {
 public:
  static void backward(std::vector<cplx>& data) {
    static std::mutex mutex;
    static std::map<std::size_t, fftw_plan> plans;
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mutex);
      auto it = plans.find(data.size());
      if (it == plans.end()) {
        std::vector<cplx> dummy(data.size());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                                reinterpret_cast<fftw_complex*>(dummy.data()),
                                reinterpret_cast<fftw_complex*>(dummy.data()), FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans.emplace(data.size(), plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
  }
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

double lebesgue_norm(const SpaceTimeSpectrum& f, int p, bool time_cutoff) {
  if (p != 2 && p != 4) throw ArgumentError("lebesgue_norm: p must be 2 or 4");
  if (f.empty()) return 0.0;

  const double dtau = f.dtau();
  const double period = 2.0 * TorusGrid::pi() / dtau;

  // Common lattice offset across all windows, and global sample index range.
  double offset = 0.0;
  bool have_offset = false;
  std::int64_t kmin = 0, kmax = 0;
  bool have_k = false;
  for (const auto& mode : f.modes()) {
    double mid0 = mode.lo + 0.5 * dtau;
    double local = mid0 - std::floor(mid0 / dtau) * dtau;
    if (!have_offset) {
      offset = local;
      have_offset = true;
    } else if (std::min(std::abs(local - offset), dtau - std::abs(local - offset)) >
               kLatticeTol * std::max(1.0, std::abs(mid0))) {
      throw ArgumentError("lebesgue_norm: windows on incompatible tau lattices");
    }
    for (std::size_t m = 0; m < mode.values.size(); ++m) {
      auto k = static_cast<std::int64_t>(std::llround((mode.tau(m, dtau) - offset) / dtau));
      if (!have_k) {
        kmin = kmax = k;
        have_k = true;
      } else {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
    }
  }
  const std::size_t span = static_cast<std::size_t>(kmax - kmin + 1);
  const std::size_t nt = next_pow2(std::max<std::size_t>(2 * span + 2, 256));
  if (nt > (std::size_t{1} << 21))
    throw ArgumentError("lebesgue_norm: tau windows too wide for time reconstruction");

  // Per-mode time signals F_n(t_i), t_i = -period/2 + i * period / nt.  The
  // common lattice phase e^{i offset t} has modulus one and is dropped.
  const double amp = std::sqrt(dtau) / std::sqrt(2.0 * TorusGrid::pi());
  std::vector<std::vector<cplx>> signals;
  signals.reserve(f.modes().size());
  for (const auto& mode : f.modes()) {
    std::vector<cplx> ring(nt, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < mode.values.size(); ++m) {
      auto k = static_cast<std::int64_t>(std::llround((mode.tau(m, dtau) - offset) / dtau)) - kmin;
      double sign = (k % 2 == 0) ? 1.0 : -1.0;  // e^{i k dtau t_0} with t_0 = -period/2
      ring[static_cast<std::size_t>(k) % nt] += amp * sign * mode.values[m];
    }
    TimeFft::backward(ring);
    signals.push_back(std::move(ring));
  }

  // Spatial integral by mode algebra: for g = sum_n a_n e^{inx},
  //   int |g|^2 dx = 2 pi sum |a_n|^2,
  //   int |g|^4 dx = 2 pi sum_d |sum_{n-n'=d} a_n conj(a_{n'})|^2.
  // Pairs are bucketed by the actual mode difference n_q - n_r.
  const std::size_t nmodes = signals.size();
  std::vector<std::int64_t> diffs;
  std::vector<std::size_t> slot(nmodes * nmodes);
  if (p == 4) {
    for (const auto& mq : f.modes())
      for (const auto& mr : f.modes()) diffs.push_back(mq.n - mr.n);
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    for (std::size_t q = 0; q < nmodes; ++q)
      for (std::size_t r = 0; r < nmodes; ++r) {
        std::int64_t d = f.modes()[q].n - f.modes()[r].n;
        slot[q * nmodes + r] =
            std::lower_bound(diffs.begin(), diffs.end(), d) - diffs.begin();
      }
  }

  const double dt = period / nt;
  double accum = 0.0;
  std::vector<cplx> a(nmodes);
  std::vector<cplx> corr(diffs.size());
  for (std::size_t i = 0; i < nt; ++i) {
    double w = 1.0;
    if (time_cutoff) {
      double t = -0.5 * period + i * dt;
      w = smooth_bump(t);
      if (w == 0.0) continue;
    }
    for (std::size_t q = 0; q < nmodes; ++q) a[q] = w * signals[q][i];
    if (p == 2) {
      double s = 0.0;
      for (const auto& v : a) s += std::norm(v);
      accum += s;
    } else {
      std::fill(corr.begin(), corr.end(), cplx(0.0, 0.0));
      for (std::size_t q = 0; q < nmodes; ++q)
        for (std::size_t r = 0; r < nmodes; ++r) corr[slot[q * nmodes + r]] += a[q] * std::conj(a[r]);
      double s = 0.0;
      for (const auto& v : corr) s += std::norm(v);
      accum += s;
    }
  }
  accum *= 2.0 * TorusGrid::pi() * dt;
  return (p == 2) ? std::sqrt(accum) : std::pow(accum, 0.25);
}

}  // namespace nlskdv
