#include "nlskdv/torus.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace nlskdv {
namespace {

// FFTW plans are cached per (size, sign).  Plan creation is not thread-safe;
// execution through fftw_execute_dft on caller-owned arrays is.
class TransformEngine {
 public:
  static TransformEngine& instance() {
    static TransformEngine e;
    return e;
  }

  void execute(int n, int sign, const cplx* in, cplx* out) {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto key = std::make_pair(n, sign);
      auto it = plans_.find(key);
      if (it == plans_.end()) {
        std::vector<cplx> dummy_in(n), dummy_out(n);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(dummy_in.data()),
                                reinterpret_cast<fftw_complex*>(dummy_out.data()), sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

 private:
  TransformEngine() = default;
  ~TransformEngine() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

double SpectralField::reality_defect() const {
  const int half = grid_.num_modes / 2;
  double worst = 0.0;
  double scale = 0.0;
  for (int n = -half; n < half; ++n) scale = std::max(scale, std::abs(at(n)));
  if (scale == 0.0) return 0.0;
  for (int n = 1; n < half; ++n) worst = std::max(worst, std::abs(at(n) - std::conj(at(-n))));
  worst = std::max(worst, std::abs(at(0).imag()));
  worst = std::max(worst, std::abs(at(-half).imag()));
  return worst / scale;
}

void SpectralField::symmetrize() {
  const int half = grid_.num_modes / 2;
  at(0) = cplx(at(0).real(), 0.0);
  at(-half) = cplx(at(-half).real(), 0.0);
  for (int n = 1; n < half; ++n) {
    cplx avg = 0.5 * (at(n) + std::conj(at(-n)));
    at(n) = avg;
    at(-n) = std::conj(avg);
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (!(grid_ == o.grid_)) throw ArgumentError("SpectralField: grid mismatch");
  for (size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (!(grid_ == o.grid_)) throw ArgumentError("SpectralField: grid mismatch");
  for (size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx c) {
  for (auto& v : coef_) v *= c;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx c, SpectralField a) { return a *= c; }

SpectralField forward_transform(const TorusGrid& grid, const std::vector<cplx>& samples,
                                bool real_valued) {
  const int n = grid.num_modes;
  if (static_cast<int>(samples.size()) != n)
    throw ArgumentError("forward_transform: sample count != N");
  std::vector<cplx> ring(n);
  TransformEngine::instance().execute(n, FFTW_FORWARD, samples.data(), ring.data());
  SpectralField out(grid, real_valued);
  const double inv = 1.0 / n;
  for (int m = -n / 2; m < n / 2; ++m) out.at(m) = ring[(m + n) % n] * inv;
  return out;
}

std::vector<cplx> inverse_transform(const SpectralField& field) {
  const int n = field.num_modes();
  std::vector<cplx> ring(n, cplx(0.0, 0.0));
  for (int m = -n / 2; m < n / 2; ++m) ring[(m + n) % n] = field.at(m);
  std::vector<cplx> out(n);
  TransformEngine::instance().execute(n, FFTW_BACKWARD, ring.data(), out.data());
  return out;
}

SpectralField spectral_derivative(const SpectralField& field, int order) {
  if (order < 1) throw ArgumentError("spectral_derivative: order must be >= 1");
  SpectralField out = field;
  const int half = field.num_modes() / 2;
  for (int m = -half; m < half; ++m) {
    cplx sym = std::pow(cplx(0.0, static_cast<double>(m)), order);
    out.at(m) *= sym;
  }
  if (order % 2 == 1) out.at(-half) = cplx(0.0, 0.0);
  return out;
}

SpectralField dealias(const SpectralField& field) {
  SpectralField out = field;
  const int n = field.num_modes();
  for (int m = -n / 2; m < n / 2; ++m)
    if (3 * std::abs(m) > n) out.at(m) = cplx(0.0, 0.0);
  return out;
}

double sobolev_norm(const SpectralField& field, double sigma) {
  double sum = 0.0;
  const int half = field.num_modes() / 2;
  for (int m = -half; m < half; ++m) {
    double w = std::pow(1.0 + std::abs(static_cast<double>(m)), 2.0 * sigma);
    sum += w * std::norm(field.at(m));
  }
  return std::sqrt(2.0 * TorusGrid::pi() * sum);
}

double l2_norm(const SpectralField& field) {
  double sum = 0.0;
  for (const auto& c : field.coefficients()) sum += std::norm(c);
  return std::sqrt(2.0 * TorusGrid::pi() * sum);
}

}  // namespace nlskdv
