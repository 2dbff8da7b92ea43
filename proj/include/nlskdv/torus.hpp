#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nlskdv/errors.hpp"

namespace nlskdv {

using cplx = std::complex<double>;

/// Uniform grid on the periodic domain [0, 2*pi): x_j = 2*pi*j/N.
struct TorusGrid {
  int num_modes = 0;

  explicit TorusGrid(int n) : num_modes(n) {
    if (n < 4 || n % 2 != 0) throw ArgumentError("TorusGrid: N must be even and >= 4");
  }

  double point(int j) const { return 2.0 * pi() * j / num_modes; }
  static constexpr double pi() { return 3.141592653589793238462643383279502884; }

  bool operator==(const TorusGrid& o) const { return num_modes == o.num_modes; }
};

/// Single-time function on the torus stored as Fourier coefficients
/// u_hat(n) for n in [-N/2, N/2).  Transform convention:
///   u_hat(n) = (1/N) sum_j u(x_j) exp(-i n x_j),
/// so coefficients approximate the continuum Fourier coefficients
/// (2*pi)^{-1} \int u exp(-i n x) dx and Parseval reads
///   \int |u|^2 dx = 2*pi sum_n |u_hat(n)|^2.
class SpectralField {
 public:
  SpectralField(TorusGrid grid, bool real_valued = false)
      : grid_(grid), coef_(grid.num_modes, cplx(0.0, 0.0)), real_valued_(real_valued) {}

  const TorusGrid& grid() const { return grid_; }
  int num_modes() const { return grid_.num_modes; }
  int min_mode() const { return -grid_.num_modes / 2; }
  int max_mode() const { return grid_.num_modes / 2 - 1; }
  bool real_valued() const { return real_valued_; }
  void set_real_valued(bool f) { real_valued_ = f; }

  cplx& at(int n) { return coef_[index_of(n)]; }
  const cplx& at(int n) const { return coef_[index_of(n)]; }

  const std::vector<cplx>& coefficients() const { return coef_; }
  std::vector<cplx>& coefficients() { return coef_; }

  /// Max relative deviation from u_hat(-n) = conj(u_hat(n)).
  double reality_defect() const;
  /// Project onto the conjugate-symmetric part (mode -N/2 forced real).
  void symmetrize();

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx c);

 private:
  int index_of(int n) const {
    if (n < min_mode() || n > max_mode()) throw ArgumentError("SpectralField: mode out of range");
    return n + grid_.num_modes / 2;
  }

  TorusGrid grid_;
  std::vector<cplx> coef_;
  bool real_valued_ = false;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx c, SpectralField a);

/// u_hat(n) = (1/N) sum_j samples_j exp(-i n x_j).
SpectralField forward_transform(const TorusGrid& grid, const std::vector<cplx>& samples,
                                bool real_valued = false);

/// samples_j = sum_n u_hat(n) exp(i n x_j); exact inverse of forward_transform.
std::vector<cplx> inverse_transform(const SpectralField& field);

/// Multiplies coefficients by (i n)^order.  The asymmetric mode n = -N/2 is
/// zeroed for odd orders (it has no conjugate partner, so its odd derivative
/// has no consistent sign on a real field).
SpectralField spectral_derivative(const SpectralField& field, int order);

/// Two-thirds rule: zeroes every mode with 3|n| > N.  Idempotent.
SpectralField dealias(const SpectralField& field);

/// sqrt(2*pi sum_n <n>^{2*sigma} |u_hat(n)|^2), <n> = 1 + |n|.
double sobolev_norm(const SpectralField& field, double sigma);

/// L^2(T) norm via Parseval: sobolev_norm at sigma = 0 but without the bracket.
double l2_norm(const SpectralField& field);

}  // namespace nlskdv
