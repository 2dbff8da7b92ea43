#include "nlskdv/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlskdv/counterexamples.hpp"
#include "nlskdv/csv.hpp"
#include "nlskdv/dynamics.hpp"
#include "nlskdv/ensembles.hpp"
#include "nlskdv/lemmas.hpp"
#include "nlskdv/multipliers.hpp"
#include "nlskdv/picard.hpp"
#include "nlskdv/scaling_fit.hpp"

namespace nlskdv {

namespace {

namespace fs = std::filesystem;

std::string now_string() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Verdicts {
  std::vector<std::string> lines;
  bool all_pass = true;

  void add(const std::string& what, bool pass, const std::string& detail) {
    lines.push_back(what + " " + detail + " verdict=" + (pass ? "PASS" : "FAIL"));
    all_pass &= pass;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

CounterexampleFamily family_from_string(const std::string& s) {
  if (s == "UV1") return CounterexampleFamily::UV1;
  if (s == "UV2") return CounterexampleFamily::UV2;
  if (s == "DU2_1") return CounterexampleFamily::DU2_1;
  return CounterexampleFamily::DU2_2;
}

std::string fmt(double v) { return format_number(v); }

// ---- subcommand drivers ---------------------------------------------------

void run_simulate(const RunConfig& cfg, ResultTable& table, Verdicts&) {
  SimConfig sim;
  sim.alpha = cfg.get_double("alpha");
  sim.beta = cfg.get_double("beta");
  sim.gamma = cfg.get_double("gamma");
  sim.num_modes = static_cast<int>(cfg.get_int("N"));
  sim.dt = cfg.get_double("dt");
  sim.t_final = cfg.get_double("T");
  sim.record_every = static_cast<int>(cfg.get_int("record_every"));
  sim.dealias = cfg.get_bool("dealias");

  auto [u0, v0] = sample_initial_data(TorusGrid(sim.num_modes), cfg.get_double("u_amp"),
                                      cfg.get_double("v_amp"));
  try {
    EvolveResult res = evolve(u0, v0, sim);
    for (std::size_t i = 0; i < res.series.size(); ++i)
      table.add_row({res.series.times[i], res.series.M[i], res.series.Q[i], res.series.E[i],
                     res.series.v_mean[i]});
  } catch (const BlowUpError& e) {
    const auto& s = e.partial_series;
    for (std::size_t i = 0; i < s.size(); ++i)
      table.add_row({s.times[i], s.M[i], s.Q[i], s.E[i], s.v_mean[i]});
    table.add_row({e.time, std::nan(""), std::nan(""), std::nan(""), std::nan("")}, true);
    throw;
  }
}

void run_scaling(const RunConfig& cfg, ResultTable& table, Verdicts& verdicts) {
  const std::string family = cfg.get_string("family");
  const double k = cfg.get_double("k"), s = cfg.get_double("s"), b = cfg.get_double("b");
  const double dtau = cfg.get_double("dtau");
  const auto n_min = cfg.get_int("N_min"), n_max = cfg.get_int("N_max");
  if (n_max < 8 * n_min) throw RangeError("scaling: need N_max >= 8 * N_min for a 4-point fit");

  std::vector<std::pair<double, double>> ratio_pts, lhs_pts;
  for (std::int64_t n = n_min; n <= n_max; n *= 2) {
    CounterexampleSpec spec{family_from_string(family), n, k, s};
    BilinearRatio r = bilinear_ratio(spec, b, dtau);
    table.add_row({family, static_cast<double>(n), k, s, r.lhs, r.rhs, r.ratio});
    ratio_pts.emplace_back(static_cast<double>(n), r.ratio);
    lhs_pts.emplace_back(static_cast<double>(n), r.lhs);
  }
  ScalingFit ratio_fit = fit_scaling(ratio_pts);
  ScalingFit lhs_fit = fit_scaling(lhs_pts);
  SlopeExpectation expect = expected_slopes(family, k, s);

  verdicts.add("scaling_ratio_slope",
               std::abs(ratio_fit.exponent - expect.ratio_slope) <= kSlopeTolerance,
               "family=" + family + " fitted=" + fmt(ratio_fit.exponent) + " expected=" +
                   fmt(expect.ratio_slope) + " (" + expect.ratio_formula + ") tolerance=" +
                   fmt(kSlopeTolerance) + " residual=" + fmt(ratio_fit.residual));
  verdicts.add("scaling_lhs_slope",
               std::abs(lhs_fit.exponent - expect.lhs_slope) <= kSlopeTolerance,
               "family=" + family + " fitted=" + fmt(lhs_fit.exponent) + " expected=" +
                   fmt(expect.lhs_slope) + " (" + expect.lhs_formula + ") tolerance=" +
                   fmt(kSlopeTolerance));
}

void run_lemmas(const RunConfig& cfg, ResultTable& table, Verdicts& verdicts) {
  const double theta = cfg.get_double("theta");
  const double theta_tilde = cfg.get_double("theta_tilde");
  const double eps = cfg.get_double("eps");

  // Bracket-kernel integral: the ratio against its bound must stay flat
  // over a dyadic sweep of the offset.
  double worst_ratio = 0.0;
  for (double a = cfg.get_double("a_min"); a <= cfg.get_double("a_max"); a *= 2.0) {
    CalculusIntegral ci = calculus_integral(theta, theta_tilde, a);
    table.add_row({std::string("calculus"), a, ci.integral, ci.paper_bound, ci.ratio});
    worst_ratio = std::max(worst_ratio, ci.ratio);
  }
  verdicts.add("calculus_ratio_bounded", std::isfinite(worst_ratio) && worst_ratio > 0.0,
               "theta=" + fmt(theta) + " theta_tilde=" + fmt(theta_tilde) + " max_ratio=" +
                   fmt(worst_ratio));

  SeriesSum cubic = polynomial_series_cubic(0.0, 0.0, 0.0, cfg.get_double("cubic_theta"));
  table.add_row({std::string("cubic_series"), cfg.get_double("cubic_theta"), cubic.partial_sum,
                 cubic.tail_bound, 0.0});
  verdicts.add("cubic_series_tail", cubic.tail_bound < 1e-2,
               "partial_sum=" + fmt(cubic.partial_sum) + " tail=" + fmt(cubic.tail_bound));

  SeriesSum linear = polynomial_series_linear(1024, 0.0, cfg.get_double("linear_theta"));
  table.add_row({std::string("linear_series"), cfg.get_double("linear_theta"), linear.partial_sum,
                 linear.tail_bound, 0.0});
  verdicts.add("linear_series_finite", std::isfinite(linear.partial_sum),
               "partial_sum=" + fmt(linear.partial_sum));

  // Dyadic measures: UV slope in M at fixed n; DU2 along the coupled
  // diagonal M ~ n^3 (its centers all sit in one dyadic block per n).
  {
    std::vector<std::pair<double, double>> pts;
    const std::int64_t n = 256;
    for (double M = std::ldexp(1.0, 21); M <= std::ldexp(1.0, 26); M *= 2.0) {
      double measure = dyadic_measure(ResonanceKind::UV, n, M, eps);
      table.add_row({std::string("dyadic_uv"), static_cast<double>(n), M, measure, 0.0});
      if (measure > 0.0) pts.emplace_back(M, measure);
    }
    bool pass = false;
    double slope = 0.0;
    if (pts.size() >= 4) {
      slope = fit_scaling(pts).exponent;
      pass = slope <= 0.95;
    }
    verdicts.add("dyadic_uv_slope", pass, "n=256 slope=" + fmt(slope) + " limit=0.95");
  }
  {
    std::vector<std::pair<double, double>> pts;
    for (std::int64_t n : {128, 181, 256, 362, 512}) {
      double block = std::ldexp(1.0, std::floor(std::log2(std::pow(double(n), 3.0))));
      double measure = dyadic_measure(ResonanceKind::DU2, n, block, eps);
      table.add_row({std::string("dyadic_du2"), static_cast<double>(n), block, measure, 0.0});
      if (measure > 0.0) pts.emplace_back(block, measure);
    }
    bool pass = false;
    double slope = 0.0;
    if (pts.size() >= 4) {
      slope = fit_scaling(pts).exponent;
      pass = slope <= 0.95;
    }
    verdicts.add("dyadic_du2_slope", pass, "diagonal slope=" + fmt(slope) + " limit=0.95");
  }
}

void run_multipliers(const RunConfig& cfg, ResultTable& table, Verdicts& verdicts) {
  const auto truncation = cfg.get_int("truncation");
  const double one_minus = cfg.get_double("one_minus");
  struct Case {
    MultiplierKind kind;
    const char* name;
    double k, s;
  };
  const double uk = cfg.get_double("uv_k"), us = cfg.get_double("uv_s");
  const double dk = cfg.get_double("du2_k"), ds = cfg.get_double("du2_s");
  const Case cases[] = {
      {MultiplierKind::UvW0, "UV_w0", uk, us},   {MultiplierKind::UvW1, "UV_w1", uk, us},
      {MultiplierKind::UvW2, "UV_w2", uk, us},   {MultiplierKind::Du2V0, "DU2_v0", dk, ds},
      {MultiplierKind::Du2V1, "DU2_v1", dk, ds}, {MultiplierKind::Du2V2, "DU2_v2", dk, ds},
  };
  for (const Case& c : cases) {
    MultiplierSup base = multiplier_sup(c.kind, c.k, c.s, one_minus, truncation);
    MultiplierSup doubled = multiplier_sup(c.kind, c.k, c.s, one_minus, 2 * truncation);
    double growth = doubled.sup_value / base.sup_value;
    table.add_row({std::string(c.name), c.k, c.s, static_cast<double>(truncation), base.sup_value,
                   doubled.sup_value, growth});
    bool pass = std::isfinite(base.sup_value) && std::isfinite(doubled.sup_value) &&
                growth >= 0.5 && growth <= 2.0;
    verdicts.add("multiplier_stability", pass,
                 std::string("kind=") + c.name + " sup=" + fmt(base.sup_value) + " doubled=" +
                     fmt(doubled.sup_value) + " growth=" + fmt(growth));
  }
}

void run_picard(const RunConfig& cfg, ResultTable& table, Verdicts& verdicts) {
  PicardConfig pc;
  pc.t_final = cfg.get_double("T");
  pc.num_time_samples = static_cast<int>(cfg.get_int("samples"));
  pc.k = cfg.get_double("k");
  pc.s = cfg.get_double("s");
  pc.tol = cfg.get_double("tol");
  pc.max_iters = static_cast<int>(cfg.get_int("max_iters"));
  pc.dealias = cfg.get_bool("dealias");
  Couplings couplings{cfg.get_double("alpha"), cfg.get_double("beta"), cfg.get_double("gamma")};

  TorusGrid grid(static_cast<int>(cfg.get_int("N")));
  auto [u0, v0] = sample_initial_data(grid, cfg.get_double("u_amp"), cfg.get_double("v_amp"));

  PicardResult res = iterate(u0, v0, pc, couplings);
  for (std::size_t i = 0; i < res.report.distances.size(); ++i) {
    double ratio = i < res.report.contraction_ratios.size() ? res.report.contraction_ratios[i]
                                                            : std::nan("");
    table.add_row({static_cast<double>(i + 1), res.report.distances[i],
                   std::isfinite(ratio) ? Cell(ratio) : Cell(std::string(""))});
  }
  double worst_ratio = 0.0;
  for (double r : res.report.contraction_ratios) worst_ratio = std::max(worst_ratio, r);
  verdicts.add("picard_contraction", res.report.converged && worst_ratio < 0.5,
               "iterations=" + std::to_string(res.report.iterations_used) + " worst_ratio=" +
                   fmt(worst_ratio));

  Trajectory again = duhamel_apply(res.fixed_point, u0, v0, pc, couplings);
  double defect = trajectory_distance(again, res.fixed_point, pc.k, pc.s);
  verdicts.add("picard_fixed_point_defect", defect < 2.0 * pc.tol,
               "defect=" + fmt(defect) + " tol=" + fmt(pc.tol));

  if (cfg.get_bool("cross_check")) {
    double dist = compare_with_dynamics(res.fixed_point, pc, couplings);
    verdicts.add("picard_cross_solver", dist < 1e-6, "distance=" + fmt(dist));
  }
}

void run_norms(const RunConfig& cfg, ResultTable& table, Verdicts& verdicts) {
  const int members = static_cast<int>(cfg.get_int("members"));
  const int range = static_cast<int>(cfg.get_int("mode_range"));
  const double dtau = cfg.get_double("dtau");
  const std::string which = cfg.get_string("family");

  auto run_family = [&](WeightFamily family, const std::string& name) {
    double base = ensemble_ratio_max(cfg.seed, family, range, members, 8, dtau);
    double doubled = ensemble_ratio_max(cfg.seed, family, 2 * range, members, 8, dtau);
    table.add_row({name, static_cast<double>(range), base, doubled, doubled / base});
    bool pass = doubled / base < 2.0 && base / doubled < 2.0;
    verdicts.add("strichartz_stability", pass,
                 "family=" + name + " max_ratio=" + fmt(base) + " doubled_range=" + fmt(doubled));
  };
  if (which == "schrodinger" || which == "both")
    run_family(WeightFamily::Schrodinger, "schrodinger");
  if (which == "airy" || which == "both") run_family(WeightFamily::Airy, "airy");
}

std::vector<std::string> columns_for(Subcommand sub) {
  switch (sub) {
    case Subcommand::Simulate: return {"t", "M", "Q", "E", "v_mean"};
    case Subcommand::Scaling: return {"family", "N", "k", "s", "lhs", "rhs", "ratio"};
    case Subcommand::Lemmas: return {"check", "parameter", "value", "bound", "extra"};
    case Subcommand::Multipliers:
      return {"kind", "k", "s", "truncation", "sup", "sup_doubled", "growth"};
    case Subcommand::Picard: return {"iteration", "distance", "ratio"};
    case Subcommand::Norms: return {"family", "mode_range", "max_ratio", "max_ratio_2x", "change"};
  }
  return {};
}

}  // namespace

SlopeExpectation expected_slopes(const std::string& family, double k, double s) {
  SlopeExpectation e;
  if (family == "UV1") {
    e.lhs_formula = "2k";
    e.lhs_slope = 2.0 * k;
    e.ratio_formula = "-s";
    e.ratio_slope = -s;
  } else if (family == "UV2") {
    e.lhs_formula = "k-3/2";
    e.lhs_slope = k - 1.5;
    e.ratio_formula = "k-s-3/2";
    e.ratio_slope = k - s - 1.5;
  } else if (family == "DU2_1") {
    e.lhs_formula = "1+s";
    e.lhs_slope = 1.0 + s;
    e.ratio_formula = "1+s-4k";
    e.ratio_slope = 1.0 + s - 4.0 * k;
  } else if (family == "DU2_2") {
    e.lhs_formula = "1+s-3/2";
    e.lhs_slope = s - 0.5;
    e.ratio_formula = "s-k-1/2";
    e.ratio_slope = s - k - 0.5;
  } else {
    throw ArgumentError("expected_slopes: unknown family " + family);
  }
  return e;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome;
  fs::create_directories(config.output_dir);
  const std::string hash = config_hash(config);
  const fs::path dir(config.output_dir);

  ResultTable table(columns_for(config.subcommand));
  table.provenance = {hash, now_string(), NLSKDV_VERSION};
  Verdicts verdicts;

  try {
    switch (config.subcommand) {
      case Subcommand::Simulate: run_simulate(config, table, verdicts); break;
      case Subcommand::Scaling: run_scaling(config, table, verdicts); break;
      case Subcommand::Lemmas: run_lemmas(config, table, verdicts); break;
      case Subcommand::Multipliers: run_multipliers(config, table, verdicts); break;
      case Subcommand::Picard: run_picard(config, table, verdicts); break;
      case Subcommand::Norms: run_norms(config, table, verdicts); break;
    }
  } catch (const std::exception& e) {
    write_results(table, (dir / "results.csv").string());
    write_text(dir / "manifest.txt",
               render_manifest(config, hash, table.provenance.timestamp, "error", e.what()));
    outcome.exit_code = 2;
    outcome.messages.push_back(std::string("error: ") + e.what());
    return outcome;
  }

  write_results(table, (dir / "results.csv").string());
  if (!verdicts.lines.empty()) {
    std::ostringstream summary;
    for (const auto& line : verdicts.lines) summary << line << "\n";
    write_text(dir / "summary.txt", summary.str());
    outcome.messages = verdicts.lines;
  }
  write_text(dir / "manifest.txt",
             render_manifest(config, hash, table.provenance.timestamp,
                             verdicts.all_pass ? "ok" : "fail"));
  outcome.exit_code = verdicts.all_pass ? 0 : 1;
  return outcome;
}

}  // namespace nlskdv
