#pragma once

#include <stdexcept>
#include <vector>

#include "nlskdv/dynamics.hpp"
#include "nlskdv/norms.hpp"
#include "nlskdv/torus.hpp"

namespace nlskdv {

struct PicardConfig {
  double t_final = 0.1;
  int num_time_samples = 32;  // intervals; trajectories carry samples+1 snapshots
  double k = 1.0;             // Sobolev indices of the contraction metric
  double s = 1.0;
  int max_iters = 12;
  double tol = 1e-10;
  bool dealias = true;

  void validate() const;
};

struct Couplings {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
};

/// Uniformly sampled pair of spectral trajectories on [0, T].
struct Trajectory {
  double dt = 0.0;
  std::vector<SpectralField> u, v;

  std::size_t samples() const { return u.size(); }
  double time(std::size_t i) const { return dt * static_cast<double>(i); }
};

struct IterationReport {
  std::vector<double> distances;          // sup-in-time H^k x H^s gaps between iterates
  std::vector<double> contraction_ratios; // distances[i+1] / distances[i]
  bool converged = false;
  int iterations_used = 0;
};

/// Divergent fixed-point iteration (three consecutive growing gaps).
class NoContractionError : public std::runtime_error {
 public:
  explicit NoContractionError(IterationReport r)
      : std::runtime_error("fixed-point iteration is not contracting"), report(std::move(r)) {}
  IterationReport report;
};

/// Multiplies u_hat(n) by exp(-i n^2 t) (Schrodinger) or exp(i n^3 t) (Airy).
SpectralField free_propagator(const SpectralField& field, double t, WeightFamily family);

/// One application of the integral-equation map on sampled trajectories:
///   u(t) <- U(t) u0 - i int_0^t U(t-t') (alpha u v + beta |u|^2 u)(t') dt'
///   v(t) <- V(t) v0 + int_0^t V(t-t') (gamma d_x|u|^2 - d_x(v^2)/2)(t') dt'
/// with exact free propagators inside a trapezoidal Volterra quadrature.
Trajectory duhamel_apply(const Trajectory& traj, const SpectralField& u0, const SpectralField& v0,
                         const PicardConfig& config, const Couplings& couplings);

/// Max over sample times of ||du||_{H^k} + ||dv||_{H^s}.
double trajectory_distance(const Trajectory& a, const Trajectory& b, double k, double s);

struct PicardResult {
  IterationReport report;
  Trajectory fixed_point;
};

/// Iterates duhamel_apply from the free-evolution seed until the successive
/// gap drops below tol or max_iters is hit; throws NoContractionError when
/// the gap grows three times in a row.
PicardResult iterate(const SpectralField& u0, const SpectralField& v0, const PicardConfig& config,
                     const Couplings& couplings);

/// Runs the time-stepping solver from the same data at dt <= (T/samples)/10
/// and returns the sup-in-time H^k x H^s distance at the sample times.
double compare_with_dynamics(const Trajectory& fixed_point, const PicardConfig& config,
                             const Couplings& couplings);

}  // namespace nlskdv
