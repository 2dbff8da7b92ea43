#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nlskdv/errors.hpp"

namespace nlskdv {

using cplx = std::complex<double>;

/// One spatial mode of a space-time spectrum: values f_hat(n, tau_m) on the
/// midpoint grid tau_m = lo + (m + 1/2) * dtau, m = 0 .. values.size()-1.
struct ModeTrack {
  std::int64_t n = 0;
  double lo = 0.0;
  std::vector<cplx> values;

  double tau(std::size_t m, double dtau) const { return lo + (m + 0.5) * dtau; }
  double hi(double dtau) const { return lo + values.size() * dtau; }
};

/// Function of (x, t) stored as f_hat(n, tau), sparse in the integer mode n
/// with one tau window per active mode.  All window starts of one spectrum
/// must sit on a common lattice lo = offset + integer * dtau so windows can
/// be merged sample-by-sample.
///
/// Reconstruction convention (fixing all norms and L^p values):
///   f(x, t) = sum_n e^{i n x} (2*pi)^{-1/2} sqrt(dtau) sum_m f_hat(n, tau_m) e^{i tau_m t},
/// under which   ||f||_{L^2(dx dt)}^2 = 2*pi sum_n sum_m |f_hat|^2 dtau,
/// the midpoint-quadrature form of Parseval for the coefficient-normalized
/// spatial transform.
class SpaceTimeSpectrum {
 public:
  explicit SpaceTimeSpectrum(double dtau);

  double dtau() const { return dtau_; }
  const std::vector<ModeTrack>& modes() const { return modes_; }
  bool empty() const { return modes_.empty(); }
  std::size_t total_samples() const;

  /// Inserts (or lattice-merges into) the window of mode n.
  void add_mode(std::int64_t n, double lo, std::vector<cplx> values);
  const ModeTrack* find(std::int64_t n) const;

  SpaceTimeSpectrum& operator*=(cplx c);

 private:
  double dtau_;
  std::vector<ModeTrack> modes_;  // sorted by n
};

SpaceTimeSpectrum operator*(cplx c, SpaceTimeSpectrum f);
SpaceTimeSpectrum operator+(const SpaceTimeSpectrum& a, const SpaceTimeSpectrum& b);

/// Characteristic-function profile chi(tau - center) of the interval
/// [center - 1, center + 1], carried on a window center +- halfwidth snapped
/// to the tau lattice.
SpaceTimeSpectrum make_chi_spectrum(double dtau, std::int64_t n, double center,
                                    double halfwidth = 8.0);

/// (f*g)(n, tau) = sum_{n1} int f(n - n1, tau - tau1) g(n1, tau1) dtau1 by
/// midpoint quadrature; output windows are the Minkowski sums of the inputs'.
SpaceTimeSpectrum convolve_spacetime(const SpaceTimeSpectrum& f, const SpaceTimeSpectrum& g);

/// Spectrum of the complex conjugate: f_hat_bar(n, tau) = conj f_hat(-n, -tau).
SpaceTimeSpectrum conjugate_flip(const SpaceTimeSpectrum& f);

/// Spectrum of the spatial derivative: multiplies mode n by (i n).
SpaceTimeSpectrum mode_derivative(const SpaceTimeSpectrum& f);

/// Smooth bump: 1 on [-1,1], 0 outside (-2,2), C-infinity in between.
double smooth_bump(double t);

/// Discrete space-time L^p norm, p in {2, 4}.  The spatial integral is done
/// exactly by mode algebra; the time integral covers one full period
/// 2*pi/dtau of the lattice reconstruction (rectangle rule, exact for p = 2).
/// With time_cutoff the signal is multiplied by smooth_bump(t) first.
double lebesgue_norm(const SpaceTimeSpectrum& f, int p, bool time_cutoff);

}  // namespace nlskdv
