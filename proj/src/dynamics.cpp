#include "nlskdv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace nlskdv {

namespace {

constexpr double kBlowUpThreshold = 1e12;

// phi-type coefficient functions of the exponential integrator,
//   q(z)  = (e^{z/2} - 1)/z,
//   f1(z) = (-4 - z + e^z (4 - 3z + z^2)) / z^3,
//   f2(z) = (2 + z + e^z (-2 + z)) / z^3,
//   f3(z) = (-4 - 3z - z^2 + e^z (4 - z)) / z^3,
// evaluated by Taylor series below |z| = 1/2 to dodge the cancellation.
struct PhiSet {
  cplx e, e2, q, f1, f2, f3;
};

PhiSet phi_functions(cplx z) {
  PhiSet out;
  out.e = std::exp(z);
  out.e2 = std::exp(0.5 * z);
  if (std::abs(z) >= 0.5) {
    cplx z3 = z * z * z;
    out.q = (out.e2 - 1.0) / z;
    out.f1 = (-4.0 - z + out.e * (4.0 - 3.0 * z + z * z)) / z3;
    out.f2 = (2.0 + z + out.e * (-2.0 + z)) / z3;
    out.f3 = (-4.0 - 3.0 * z - z * z + out.e * (4.0 - z)) / z3;
  } else {
    out.q = out.f1 = out.f2 = out.f3 = cplx(0.0, 0.0);
    cplx zp(1.0, 0.0);  // z^m
    double fact_j = 6.0;  // (m+3)! running factorial, starting at 3! for m=0
    double half_pow = 0.5;  // (1/2)^{m+1}
    double fact_m1 = 1.0;   // (m+1)!
    for (int m = 0; m < 26; ++m) {
      double j = m + 3.0;
      // Coefficients of z^m in the series of f1, f2, f3 (j = m + 3):
      //   f1: 4/j! - 3/(j-1)! + 1/(j-2)!,  f2: -2/j! + 1/(j-1)!,
      //   f3: 4/j! - 1/(j-1)!.
      double inv_j = 1.0 / fact_j;
      double inv_j1 = inv_j * j;
      double inv_j2 = inv_j1 * (j - 1.0);
      out.f1 += zp * (4.0 * inv_j - 3.0 * inv_j1 + inv_j2);
      out.f2 += zp * (-2.0 * inv_j + inv_j1);
      out.f3 += zp * (4.0 * inv_j - inv_j1);
      out.q += zp * (half_pow / fact_m1);
      zp *= z;
      fact_j *= (j + 1.0);
      half_pow *= 0.5;
      fact_m1 *= (m + 2.0);
    }
  }
  return out;
}

// Per-(N, dt) tables of the stage coefficients for both linear symbols.
struct EtdTables {
  std::vector<PhiSet> u, v;  // indexed by n + N/2
};

std::shared_ptr<const EtdTables> etd_tables(int num_modes, double dt) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const EtdTables>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(num_modes, dt);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto tables = std::make_shared<EtdTables>();
  tables->u.resize(num_modes);
  tables->v.resize(num_modes);
  for (int n = -num_modes / 2; n < num_modes / 2; ++n) {
    double x = n;
    tables->u[n + num_modes / 2] = phi_functions(dt * cplx(0.0, -x * x));    // L_u = -i n^2
    tables->v[n + num_modes / 2] = phi_functions(dt * cplx(0.0, x * x * x)); // L_v = i n^3
  }
  cache.emplace(key, tables);
  return tables;
}

std::pair<SpectralField, SpectralField> tendencies(const SpectralField& u, const SpectralField& v,
                                                   const SimConfig& config) {
  const TorusGrid& grid = u.grid();
  const int n = grid.num_modes;
  std::vector<cplx> up = inverse_transform(u);
  std::vector<cplx> vp = inverse_transform(v);

  std::vector<cplx> fu(n), fv(n);
  for (int j = 0; j < n; ++j) {
    double vr = vp[j].real();  // v is real-valued by invariant
    double u2 = std::norm(up[j]);
    fu[j] = config.alpha * up[j] * vr + config.beta * u2 * up[j];
    fv[j] = cplx(config.gamma * u2 - 0.5 * vr * vr, 0.0);
  }
  SpectralField nu = forward_transform(grid, fu);
  SpectralField nv = forward_transform(grid, fv, true);
  for (int m = -n / 2; m < n / 2; ++m) {
    nu.at(m) *= cplx(0.0, -1.0);
    nv.at(m) *= cplx(0.0, static_cast<double>(m));
  }
  nv.at(-n / 2) = cplx(0.0, 0.0);
  if (config.dealias) {
    nu = dealias(nu);
    nv = dealias(nv);
  }
  return {std::move(nu), std::move(nv)};
}

void check_finite(const SpectralField& f, double t) {
  for (const auto& c : f.coefficients()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > kBlowUpThreshold)
      throw BlowUpError(t);
  }
}

}  // namespace

void SimConfig::validate() const {
  if (num_modes < 16 || num_modes % 2 != 0)
    throw ArgumentError("SimConfig: N must be even and >= 16");
  if (!(dt > 0.0)) throw ArgumentError("SimConfig: dt must be positive");
  if (!(t_final >= dt)) throw ArgumentError("SimConfig: t_final must be >= dt");
  if (record_every < 1) throw ArgumentError("SimConfig: record_every must be >= 1");
}

std::pair<SpectralField, SpectralField> nonlinearity(const State& state, const SimConfig& config) {
  return tendencies(state.u, state.v, config);
}

State step(const State& state, const SimConfig& config) {
  const int n = state.u.num_modes();
  auto tables = etd_tables(n, config.dt);
  const double dt = config.dt;

  auto [nu0, nv0] = tendencies(state.u, state.v, config);

  SpectralField ua(state.u.grid()), va(state.v.grid(), true);
  SpectralField ub(state.u.grid()), vb(state.v.grid(), true);
  SpectralField uc(state.u.grid()), vc(state.v.grid(), true);

  auto& tu = tables->u;
  auto& tv = tables->v;
  auto idx = [n](int m) { return m + n / 2; };

  for (int m = -n / 2; m < n / 2; ++m) {
    ua.at(m) = tu[idx(m)].e2 * state.u.at(m) + dt * tu[idx(m)].q * nu0.at(m);
    va.at(m) = tv[idx(m)].e2 * state.v.at(m) + dt * tv[idx(m)].q * nv0.at(m);
  }
  auto [nua, nva] = tendencies(ua, va, config);

  for (int m = -n / 2; m < n / 2; ++m) {
    ub.at(m) = tu[idx(m)].e2 * state.u.at(m) + dt * tu[idx(m)].q * nua.at(m);
    vb.at(m) = tv[idx(m)].e2 * state.v.at(m) + dt * tv[idx(m)].q * nva.at(m);
  }
  auto [nub, nvb] = tendencies(ub, vb, config);

  for (int m = -n / 2; m < n / 2; ++m) {
    uc.at(m) = tu[idx(m)].e2 * ua.at(m) + dt * tu[idx(m)].q * (2.0 * nub.at(m) - nu0.at(m));
    vc.at(m) = tv[idx(m)].e2 * va.at(m) + dt * tv[idx(m)].q * (2.0 * nvb.at(m) - nv0.at(m));
  }
  auto [nuc, nvc] = tendencies(uc, vc, config);

  State next(SpectralField(state.u.grid()), SpectralField(state.v.grid(), true),
             state.t + config.dt);
  for (int m = -n / 2; m < n / 2; ++m) {
    const PhiSet& pu = tu[idx(m)];
    const PhiSet& pv = tv[idx(m)];
    next.u.at(m) = pu.e * state.u.at(m) +
                   dt * (pu.f1 * nu0.at(m) + 2.0 * pu.f2 * (nua.at(m) + nub.at(m)) +
                         pu.f3 * nuc.at(m));
    next.v.at(m) = pv.e * state.v.at(m) +
                   dt * (pv.f1 * nv0.at(m) + 2.0 * pv.f2 * (nva.at(m) + nvb.at(m)) +
                         pv.f3 * nvc.at(m));
  }
  next.v.symmetrize();
  check_finite(next.u, next.t);
  check_finite(next.v, next.t);
  return next;
}

Conserved conserved(const State& state, const SimConfig& config) {
  const int n = state.u.num_modes();
  Conserved out;

  double sum_u2 = 0.0, sum_v2 = 0.0, sum_nu2 = 0.0, sum_n2u2 = 0.0, sum_n2v2 = 0.0;
  for (int m = -n / 2; m < n / 2; ++m) {
    double x = m;
    double au = std::norm(state.u.at(m));
    double av = std::norm(state.v.at(m));
    sum_u2 += au;
    sum_v2 += av;
    sum_nu2 += x * au;
    sum_n2u2 += x * x * au;
    sum_n2v2 += x * x * av;
  }
  const double two_pi = 2.0 * TorusGrid::pi();
  out.M = two_pi * sum_u2;
  // int Im(u d_x conj u) dx = -2 pi sum n |u_hat|^2.
  out.Q = config.alpha * two_pi * sum_v2 - 2.0 * config.gamma * two_pi * sum_nu2;

  // Cubic and quartic integrands on a zero-padded grid to keep the
  // diagnostic alias-free.
  const int np = 2 * n;
  TorusGrid padded(np);
  SpectralField up(padded), vp(padded, true);
  for (int m = -n / 2; m < n / 2; ++m) {
    up.at(m) = state.u.at(m);
    vp.at(m) = state.v.at(m);
  }
  std::vector<cplx> uphys = inverse_transform(up);
  std::vector<cplx> vphys = inverse_transform(vp);
  double cubic = 0.0;
  for (int j = 0; j < np; ++j) {
    double vr = vphys[j].real();
    double u2 = std::norm(uphys[j]);
    cubic += config.alpha * config.gamma * vr * u2 - config.alpha / 6.0 * vr * vr * vr +
             0.5 * config.beta * config.gamma * u2 * u2;
  }
  cubic *= two_pi / np;

  out.E = cubic + 0.5 * config.alpha * two_pi * sum_n2v2 + config.gamma * two_pi * sum_n2u2;
  out.v_mean = state.v.at(0).real();
  return out;
}

std::pair<SpectralField, SpectralField> sample_initial_data(const TorusGrid& grid, double u_amp,
                                                            double v_amp) {
  SpectralField u0(grid);
  SpectralField v0(grid, true);
  u0.at(1) = u_amp * cplx(0.6, 0.3);
  u0.at(-2) = u_amp * cplx(0.2, 0.0);
  u0.at(3) = u_amp * cplx(0.1, 0.0);
  v0.at(1) = v_amp * cplx(0.4, 0.0);    // 0.8 cos x
  v0.at(-1) = v_amp * cplx(0.4, 0.0);
  v0.at(2) = v_amp * cplx(0.0, -0.2);   // 0.4 sin 2x
  v0.at(-2) = v_amp * cplx(0.0, 0.2);
  v0.at(3) = v_amp * cplx(0.05, 0.0);   // 0.1 cos 3x
  v0.at(-3) = v_amp * cplx(0.05, 0.0);
  return {std::move(u0), std::move(v0)};
}

EvolveResult evolve(const SpectralField& u0, const SpectralField& v0, const SimConfig& config) {
  config.validate();
  if (!(u0.grid() == v0.grid())) throw ArgumentError("evolve: fields on different grids");
  if (u0.num_modes() != config.num_modes) throw ArgumentError("evolve: grid size != config N");

  State state(u0, v0, 0.0);
  if (config.dealias) {
    state.u = dealias(state.u);
    state.v = dealias(state.v);
  }
  state.v.at(-config.num_modes / 2) = cplx(0.0, 0.0);
  state.v.symmetrize();

  EvolveResult result{{}, {}, state};
  auto record = [&](const State& s) {
    Conserved c = conserved(s, config);
    result.series.push(s.t, c.M, c.Q, c.E, c.v_mean);
    result.snapshots.push_back(s);
  };
  record(state);

  const auto steps = static_cast<long long>(std::llround(config.t_final / config.dt));
  for (long long i = 1; i <= std::max(1LL, steps); ++i) {
    try {
      state = step(state, config);
    } catch (const BlowUpError& e) {
      throw BlowUpError(e.time, result.series);
    }
    if (i % config.record_every == 0 || i == steps) record(state);
  }
  result.final_state = state;
  return result;
}

}  // namespace nlskdv
