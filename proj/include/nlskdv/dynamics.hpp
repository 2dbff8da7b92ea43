#pragma once

#include <stdexcept>
#include <vector>

#include "nlskdv/torus.hpp"

namespace nlskdv {

/// Coupled system on the torus:
///   i u_t + u_xx = alpha u v + beta |u|^2 u
///   v_t + v_xxx + (v^2)_x / 2 = gamma (|u|^2)_x
struct SimConfig {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  int num_modes = 64;
  double dt = 1e-3;
  double t_final = 0.5;
  bool dealias = true;
  int record_every = 10;

  void validate() const;
};

struct State {
  SpectralField u;
  SpectralField v;
  double t = 0.0;

  State(SpectralField u_, SpectralField v_, double t_ = 0.0)
      : u(std::move(u_)), v(std::move(v_)), t(t_) {}
};

struct ConservedSeries {
  std::vector<double> times, M, Q, E, v_mean;

  void push(double t, double m, double q, double e, double mean) {
    times.push_back(t);
    M.push_back(m);
    Q.push_back(q);
    E.push_back(e);
    v_mean.push_back(mean);
  }
  std::size_t size() const { return times.size(); }
};

/// A coefficient exceeded the abort threshold or went non-finite.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double t, ConservedSeries partial = {})
      : std::runtime_error("solution blew up at t = " + std::to_string(t)),
        time(t),
        partial_series(std::move(partial)) {}

  double time;
  ConservedSeries partial_series;
};

struct Conserved {
  double M = 0.0, Q = 0.0, E = 0.0, v_mean = 0.0;
};

/// Spectral tendencies of the nonlinear terms:
///   N_u = -i (alpha u v + beta |u|^2 u)^,   N_v(n) = i n (gamma (|u|^2)^ - (v^2)^ / 2).
/// Products are formed pointwise in physical space, dealiased when configured.
std::pair<SpectralField, SpectralField> nonlinearity(const State& state, const SimConfig& config);

/// One ETDRK4 step with exact linear propagators exp(-i n^2 dt) (u) and
/// exp(i n^3 dt) (v); v's conjugate symmetry is re-imposed afterwards.
State step(const State& state, const SimConfig& config);

/// M = int |u|^2, Q = int { alpha v^2 + 2 gamma Im(u d_x conj u) },
/// E = int { alpha gamma v |u|^2 - alpha v^3/6 + beta gamma |u|^4 / 2
///           + alpha |v_x|^2 / 2 + gamma |u_x|^2 }, plus the spatial mean of v.
/// Quadratic terms by Parseval, cubic/quartic on a 2x zero-padded grid.
Conserved conserved(const State& state, const SimConfig& config);

struct EvolveResult {
  std::vector<State> snapshots;  // every record_every steps, including endpoints
  ConservedSeries series;
  State final_state;
};

/// Repeated step(); a blow-up is rethrown with the partial series attached.
EvolveResult evolve(const SpectralField& u0, const SpectralField& v0, const SimConfig& config);

/// Smooth few-mode initial data used by the command-line runs:
///   u0 = u_amp ((0.6 + 0.3i) e^{ix} + 0.2 e^{-2ix} + 0.1 e^{3ix}),
///   v0 = v_amp (0.8 cos x + 0.4 sin 2x + 0.1 cos 3x).
std::pair<SpectralField, SpectralField> sample_initial_data(const TorusGrid& grid, double u_amp,
                                                            double v_amp);

}  // namespace nlskdv
