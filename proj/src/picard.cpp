#include "nlskdv/picard.hpp"

#include <cmath>

namespace nlskdv {

namespace {

// Spectral nonlinearities at one time sample (same products as dynamics).
std::pair<SpectralField, SpectralField> forcing(const SpectralField& u, const SpectralField& v,
                                                const PicardConfig& config,
                                                const Couplings& couplings) {
  const TorusGrid& grid = u.grid();
  const int n = grid.num_modes;
  std::vector<cplx> up = inverse_transform(u);
  std::vector<cplx> vp = inverse_transform(v);
  std::vector<cplx> fu(n), fv(n);
  for (int j = 0; j < n; ++j) {
    double vr = vp[j].real();
    double u2 = std::norm(up[j]);
    fu[j] = couplings.alpha * up[j] * vr + couplings.beta * u2 * up[j];
    fv[j] = cplx(couplings.gamma * u2 - 0.5 * vr * vr, 0.0);
  }
  SpectralField gu = forward_transform(grid, fu);
  SpectralField gv = forward_transform(grid, fv, true);
  for (int m = -n / 2; m < n / 2; ++m) gv.at(m) *= cplx(0.0, static_cast<double>(m));
  gv.at(-n / 2) = cplx(0.0, 0.0);
  if (config.dealias) {
    gu = dealias(gu);
    gv = dealias(gv);
  }
  return {std::move(gu), std::move(gv)};
}

}  // namespace

void PicardConfig::validate() const {
  if (!(t_final > 0.0)) throw ArgumentError("PicardConfig: T must be positive");
  if (num_time_samples < 16) throw ArgumentError("PicardConfig: need >= 16 time samples");
  if (!(tol > 0.0)) throw ArgumentError("PicardConfig: tol must be positive");
  if (max_iters < 1) throw ArgumentError("PicardConfig: max_iters must be >= 1");
}

SpectralField free_propagator(const SpectralField& field, double t, WeightFamily family) {
  SpectralField out = field;
  const int n = field.num_modes();
  for (int m = -n / 2; m < n / 2; ++m) {
    double x = m;
    double phase = family == WeightFamily::Schrodinger ? -x * x * t : x * x * x * t;
    out.at(m) *= cplx(std::cos(phase), std::sin(phase));
  }
  return out;
}

Trajectory duhamel_apply(const Trajectory& traj, const SpectralField& u0, const SpectralField& v0,
                         const PicardConfig& config, const Couplings& couplings) {
  config.validate();
  const auto samples = static_cast<std::size_t>(config.num_time_samples) + 1;
  if (traj.samples() != samples) throw ArgumentError("duhamel_apply: time grid mismatch");
  const double dt = config.t_final / config.num_time_samples;
  if (std::abs(traj.dt - dt) > 1e-12 * std::max(1.0, dt))
    throw ArgumentError("duhamel_apply: trajectory dt mismatch");
  const int n = u0.num_modes();

  // Forcing snapshots, then one Volterra sweep per output time.  With the
  // propagators pulled inside, the integrand at t_j is U(t_i - t_j) F(t_j).
  std::vector<SpectralField> fu, fv;
  fu.reserve(samples);
  fv.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    auto [gu, gv] = forcing(traj.u[j], traj.v[j], config, couplings);
    fu.push_back(std::move(gu));
    fv.push_back(std::move(gv));
  }

  Trajectory out;
  out.dt = dt;
  out.u.reserve(samples);
  out.v.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    double ti = dt * static_cast<double>(i);
    SpectralField ui = free_propagator(u0, ti, WeightFamily::Schrodinger);
    SpectralField vi = free_propagator(v0, ti, WeightFamily::Airy);
    if (i > 0) {
      SpectralField acc_u(u0.grid());
      SpectralField acc_v(v0.grid(), true);
      for (std::size_t j = 0; j <= i; ++j) {
        double w = (j == 0 || j == i) ? 0.5 : 1.0;
        double lag = ti - dt * static_cast<double>(j);
        acc_u += w * free_propagator(fu[j], lag, WeightFamily::Schrodinger);
        acc_v += w * free_propagator(fv[j], lag, WeightFamily::Airy);
      }
      for (int m = -n / 2; m < n / 2; ++m) {
        ui.at(m) += cplx(0.0, -1.0) * dt * acc_u.at(m);
        vi.at(m) += dt * acc_v.at(m);
      }
    }
    vi.symmetrize();
    out.u.push_back(std::move(ui));
    out.v.push_back(std::move(vi));
  }
  return out;
}

double trajectory_distance(const Trajectory& a, const Trajectory& b, double k, double s) {
  if (a.samples() != b.samples()) throw ArgumentError("trajectory_distance: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples(); ++i) {
    double du = sobolev_norm(a.u[i] - b.u[i], k);
    double dv = sobolev_norm(a.v[i] - b.v[i], s);
    worst = std::max(worst, du + dv);
  }
  return worst;
}

PicardResult iterate(const SpectralField& u0, const SpectralField& v0, const PicardConfig& config,
                     const Couplings& couplings) {
  config.validate();
  const auto samples = static_cast<std::size_t>(config.num_time_samples) + 1;
  const double dt = config.t_final / config.num_time_samples;

  Trajectory current;
  current.dt = dt;
  for (std::size_t i = 0; i < samples; ++i) {
    double ti = dt * static_cast<double>(i);
    current.u.push_back(free_propagator(u0, ti, WeightFamily::Schrodinger));
    current.v.push_back(free_propagator(v0, ti, WeightFamily::Airy));
  }

  IterationReport report;
  int growth_streak = 0;
  for (int it = 1; it <= config.max_iters; ++it) {
    Trajectory next = duhamel_apply(current, u0, v0, config, couplings);
    double d = trajectory_distance(next, current, config.k, config.s);
    if (!report.distances.empty()) {
      double prev = report.distances.back();
      if (prev > 0.0) report.contraction_ratios.push_back(d / prev);
      growth_streak = d > prev ? growth_streak + 1 : 0;
    }
    report.distances.push_back(d);
    report.iterations_used = it;
    current = std::move(next);
    if (!std::isfinite(d) || growth_streak >= 3) throw NoContractionError(report);
    if (d < config.tol) {
      report.converged = true;
      break;
    }
  }
  if (!report.converged && report.distances.size() >= 3) {
    // Ran out of iterations while still expanding: surface it as divergence.
    auto& dd = report.distances;
    if (dd[dd.size() - 1] > dd[dd.size() - 2] && dd[dd.size() - 2] > dd[dd.size() - 3])
      throw NoContractionError(report);
  }
  return PicardResult{std::move(report), std::move(current)};
}

double compare_with_dynamics(const Trajectory& fixed_point, const PicardConfig& config,
                             const Couplings& couplings) {
  const double dt_sample = config.t_final / config.num_time_samples;
  const int substeps = 10;

  SimConfig sim;
  sim.alpha = couplings.alpha;
  sim.beta = couplings.beta;
  sim.gamma = couplings.gamma;
  sim.num_modes = fixed_point.u.front().num_modes();
  sim.dt = dt_sample / substeps;
  sim.t_final = config.t_final;
  sim.dealias = config.dealias;
  sim.record_every = substeps;

  EvolveResult res = evolve(fixed_point.u.front(), fixed_point.v.front(), sim);
  if (res.snapshots.size() != fixed_point.samples())
    throw ArgumentError("compare_with_dynamics: sample grids disagree");

  double worst = 0.0;
  for (std::size_t i = 0; i < fixed_point.samples(); ++i) {
    double du = sobolev_norm(res.snapshots[i].u - fixed_point.u[i], config.k);
    double dv = sobolev_norm(res.snapshots[i].v - fixed_point.v[i], config.s);
    worst = std::max(worst, du + dv);
  }
  return worst;
}

}  // namespace nlskdv
