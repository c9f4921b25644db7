#include "wavelab/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <future>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "json.hpp"

#include "wavelab/cli/output.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/scaling.hpp"

#ifndef WAVELAB_VERSION
#define WAVELAB_VERSION "unknown"
#endif

namespace wavelab::cli {
namespace {

using nlohmann::json;

std::ostream& log_of(const Context& ctx) { return ctx.log ? *ctx.log : std::cerr; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json metadata(const Context& ctx, const std::string& command) {
  return json{{"command", command},
              {"config_hash", ctx.config.hash()},
              {"config", ctx.config.canonical()},
              {"timestamp", utc_timestamp()},
              {"versions", {{"wavelab", WAVELAB_VERSION}, {"compiler", __VERSION__}}}};
}

// JSON cannot carry inf/nan; store them as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json solution_json(const WaveSolution& s) {
  json log = s.diag.log;
  return json{{"status", to_string(s.status)},
              {"nu", s.nu},
              {"mu", s.mu},
              {"period", s.period},
              {"points", s.u.size()},
              {"residual_inf", s.residual_inf},
              {"energy", s.diag.energy},
              {"sup_norm", s.diag.sup_norm},
              {"l2_norm", s.diag.l2_norm},
              {"hs_norm", s.diag.hs_norm},
              {"penalty_active", s.diag.penalty_active},
              {"cutoff_active", s.diag.cutoff_active},
              {"nonconstant", s.diag.nonconstant},
              {"pg_failed", s.diag.pg_failed},
              {"used_fallback", s.diag.used_fallback},
              {"pg_iterations", s.diag.pg_iterations},
              {"newton_iterations", s.diag.newton_iterations},
              {"multiplier_mismatch", number(s.diag.multiplier_mismatch)},
              {"residual_history", s.diag.residual_history},
              {"log", log}};
}

std::string stem(const Context& ctx) { return ctx.config.output.prefix + "-" + ctx.config.hash(); }

template <class F>
auto parallel_map(std::size_t n, unsigned jobs, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using T = decltype(f(std::size_t{}));
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, n); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  std::vector<T> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Continuation ladders are sequential; without continuation the rungs are
// independent and go to the worker pool.
SweepResult run_sweep(const Context& ctx) {
  const SolveConfig& base = ctx.config.solve;
  const std::vector<double> ladder = ctx.config.sweep.ladder();
  if (base.continuation.enabled || ctx.jobs <= 1) return sweep_mu(base, ladder);

  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i - 1])) throw ConfigError("mu ladder must be strictly decreasing");
  auto sols = parallel_map(ladder.size(), ctx.jobs, [&](std::size_t i) {
    SolveConfig c = base;
    c.mu = ladder[i];
    c.penalizer_level = ladder.front();
    return solve(c);
  });
  SweepResult res;
  for (auto it = sols.rbegin(); it != sols.rend(); ++it) {
    if (!it->accepted()) ++res.failures;
    res.rows.push_back(make_row(*it));
    res.solutions.push_back(std::move(*it));
  }
  res.valid = 2 * res.failures <= res.rows.size();
  return res;
}

struct FitTarget {
  Quantity quantity;
  double target;
  double tolerance;
};

std::vector<FitTarget> fit_targets(const RunConfig& cfg, const SymbolSpec& sym) {
  const auto ex = long_wave_exponents(sym.expansion_order(), cfg.solve.q);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double alpha = ex ? ex->alpha : nan;
  return {{Quantity::speed_excess, cfg.solve.q * alpha, cfg.sweep.tol_speed},
          {Quantity::sup_norm, alpha, cfg.sweep.tol_sup},
          {Quantity::hs_norm, 0.5, cfg.sweep.tol_hs}};
}

}  // namespace

int cmd_solve(const Context& ctx) {
  const SolveConfig& cfg = ctx.config.solve;
  const WaveSolution sol = solve(cfg);
  const SymbolSpec sym = cfg.make_symbol();
  const NonlinearitySpec nl = cfg.make_nonlinearity();

  const RealField Lu = apply_multiplier(sol.u, sym);
  CsvTable profile({"x", "u", "Lu", "n_u"});
  for (std::size_t j = 0; j < sol.u.size(); ++j)
    profile.add(sol.u.grid().point(j)).add(sol.u[j]).add(Lu[j]).add(n_eval(nl, sol.u[j], sol.mu)).end_row();

  json meta = metadata(ctx, "solve");
  meta["solution"] = solution_json(sol);
  meta["speed_excess"] = sol.nu - sym.value_at_zero();
  meta["sign"] = to_string(sign_check(sol, sym));

  OutputBundle out(ctx.out_dir, stem(ctx));
  out.stage("profile.csv", profile.str());
  out.stage("solution.json", meta.dump(2) + "\n");
  out.commit();
  log_of(ctx) << "solve: " << to_string(sol.status) << " nu = " << format_double(sol.nu)
              << " residual = " << format_double(sol.residual_inf) << "\n";
  return sol.accepted() ? exit_ok : exit_flagged;
}

int cmd_sweep(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  const SymbolSpec sym = cfg.solve.make_symbol();
  const NonlinearitySpec nl = cfg.solve.make_nonlinearity();
  const double m0 = sym.value_at_zero();
  const SweepResult sweep = run_sweep(ctx);

  CsvTable rows({"mu", "period", "nu", "nu_minus_m0", "sup_norm", "l2_norm", "hs_norm", "energy", "residual",
                 "multiplier_mismatch", "newton_iterations", "fallback", "status", "gkdv_distance", "sign"});
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& r = sweep.rows[i];
    const auto cmp = gkdv_profile_compare(sweep.solutions[i], sym, nl);
    rows.add(r.mu).add(r.period).add(r.nu).add(r.nu - m0).add(r.sup_norm).add(r.l2_norm).add(r.hs_norm).add(r.energy);
    rows.add(r.residual).add(r.multiplier_mismatch).add(static_cast<double>(r.newton_iterations)).add(r.fallback);
    rows.add(to_string(r.status))
        .add(cmp.applicable ? cmp.distance : std::numeric_limits<double>::quiet_NaN())
        .add(to_string(sign_check(sweep.solutions[i], sym)))
        .end_row();
  }

  bool all_pass = sweep.valid;
  CsvTable fits({"quantity", "slope", "target", "tolerance", "pass"});
  std::vector<PlotSeries> series;
  json fit_json = json::array();
  for (const auto& t : fit_targets(cfg, sym)) {
    PlotSeries ps;
    ps.label = to_string(t.quantity);
    for (const auto& r : sweep.rows) {
      if (!r.accepted()) continue;
      ps.x.push_back(r.mu);
      ps.y.push_back(t.quantity == Quantity::speed_excess ? r.nu - m0
                     : t.quantity == Quantity::sup_norm   ? r.sup_norm
                     : t.quantity == Quantity::l2_norm    ? r.l2_norm
                                                          : r.hs_norm);
    }
    try {
      const ExponentFit f = fit_exponent(sweep.rows, t.quantity, m0);
      const bool pass = std::isfinite(t.target) && std::abs(f.slope - t.target) <= t.tolerance;
      all_pass = all_pass && pass;
      fits.add(f.quantity).add(f.slope).add(t.target).add(t.tolerance).add(pass).end_row();
      fit_json.push_back({{"quantity", f.quantity}, {"slope", f.slope}, {"target", number(t.target)}, {"pass", pass},
                          {"rms", f.rms}, {"points", f.points}});
      ps.slope = f.slope;
      ps.intercept = f.intercept;
      ps.has_fit = true;
    } catch (const ValidationError& e) {
      all_pass = false;
      log_of(ctx) << "sweep: " << e.what() << "\n";
      fits.add(to_string(t.quantity)).add(std::numeric_limits<double>::quiet_NaN()).add(t.target).add(t.tolerance);
      fits.add(false).end_row();
    }
    series.push_back(std::move(ps));
  }

  const auto gain = energy_gain_check(sweep, sym, nl);
  json meta = metadata(ctx, "sweep");
  meta["valid"] = sweep.valid;
  meta["failures"] = sweep.failures;
  meta["fits"] = fit_json;
  meta["energy_gain"] = {{"gain", gain.gain},         {"gain_min", gain.gain_min},
                         {"gain_max", gain.gain_max}, {"bounded_away", gain.bounded_away},
                         {"periodic_bound", gain.periodic_bound}, {"note", gain.note}};

  OutputBundle out(ctx.out_dir, stem(ctx));
  out.stage("sweep.csv", rows.str());
  out.stage("fits.csv", fits.str());
  out.stage("sweep.json", meta.dump(2) + "\n");
  if (ctx.plots) out.stage("sweep.svg", loglog_svg("mu sweep", "mu", series));
  out.commit();
  for (const auto& s : series)
    log_of(ctx) << "sweep: " << s.label << " slope " << (s.has_fit ? format_double(s.slope) : "n/a") << "\n";
  return all_pass ? exit_ok : exit_flagged;
}

int cmd_gamma(double q, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", jensen_gamma(q));
  out << buf << "\n";
  return exit_ok;
}

int cmd_symbol_check(const Context& ctx) {
  const SolveConfig& cfg = ctx.config.solve;
  const SymbolSpec sym = cfg.make_symbol();
  const SymbolCheck chk = check_symbol(sym, cfg.grid());
  const WienerReport w = wiener_predicates(sym);

  // l1 of the kernel along a refinement sequence at fixed spacing.
  json kernels = json::array();
  CsvTable ktab({"half_width", "count", "l1_estimate", "tail_estimate", "min_over_max", "underresolved"});
  for (int i = 0; i < 3; ++i) {
    const double X = 64.0 * std::ldexp(1.0, i);
    const std::size_t M = std::size_t{1} << (15 + i);
    const KernelSample ks = kernel_sample(sym, X, M);
    const double ratio = ks.max_value() > 0 ? ks.min_value() / ks.max_value() : 0.0;
    ktab.add(X).add(static_cast<double>(M)).add(ks.l1_estimate).add(ks.tail_estimate).add(ratio).add(ks.underresolved);
    ktab.end_row();
    kernels.push_back({{"X", X}, {"M", M}, {"l1", ks.l1_estimate}, {"tail", ks.tail_estimate}, {"min_over_max", ratio}});
  }

  CsvTable wtab({"condition", "verdict", "value", "detail"});
  auto cond = [&](const char* name, const WienerCondition& c) {
    wtab.add(name).add(to_string(c.verdict)).add(c.value).add(c.detail).end_row();
    log_of(ctx) << "symbol-check: " << name << " " << to_string(c.verdict) << " (" << c.detail << ")\n";
    return json{{"verdict", to_string(c.verdict)}, {"value", c.value}, {"detail", c.detail}};
  };
  json meta = metadata(ctx, "symbol-check");
  meta["symbol"] = sym.name();
  meta["wiener"] = {{"fitted_order", w.fitted_order},
                    {"fitted_derivative_order", w.fitted_derivative_order},
                    {"decay_constant", w.decay_constant},
                    {"derivative_decay", cond("derivative_decay", w.derivative_decay)},
                    {"integrability", cond("integrability", w.integrability)},
                    {"quasi_convexity", cond("quasi_convexity", w.quasi_convexity)},
                    {"any_pass", w.any_pass()}};
  meta["assumptions"] = {{"evenness_error", chk.evenness_error},
                         {"decay_constant", number(chk.decay_constant)},
                         {"unique_maximum", chk.unique_maximum},
                         {"expansion_order_observed", number(chk.expansion_order_observed)},
                         {"expansion_ok", chk.expansion_ok},
                         {"passed", chk.passed()}};
  meta["kernel"] = kernels;

  OutputBundle out(ctx.out_dir, stem(ctx));
  out.stage("wiener.csv", wtab.str());
  out.stage("kernel.csv", ktab.str());
  out.stage("symbol.json", meta.dump(2) + "\n");
  out.commit();
  return w.any_pass() ? exit_ok : exit_flagged;
}

int cmd_compare_kdv(const Context& ctx) {
  const SymbolSpec sym = ctx.config.solve.make_symbol();
  const NonlinearitySpec nl = ctx.config.solve.make_nonlinearity();
  const SweepResult sweep = run_sweep(ctx);

  CsvTable tab({"mu", "nu_minus_m0", "distance", "ode_residual", "a", "b", "status"});
  std::vector<double> dist;  // in ladder order (decreasing mu)
  bool ok = sweep.valid;
  for (std::size_t i = 0; i < sweep.solutions.size(); ++i) {
    const auto& s = sweep.solutions[i];
    const auto cmp = gkdv_profile_compare(s, sym, nl);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    tab.add(s.mu).add(s.nu - sym.value_at_zero());
    tab.add(cmp.applicable ? cmp.distance : nan).add(cmp.applicable ? cmp.ode_residual : nan);
    tab.add(cmp.profile.a).add(cmp.profile.b).add(to_string(s.status)).end_row();
    if (!cmp.applicable || !s.accepted()) {
      ok = false;
      if (!cmp.note.empty()) log_of(ctx) << "compare-kdv: " << cmp.note << "\n";
      continue;
    }
    ok = ok && cmp.ode_residual < 1e-10;
    dist.insert(dist.begin(), cmp.distance);
  }
  for (std::size_t i = 1; i < dist.size(); ++i) ok = ok && dist[i] < dist[i - 1];
  ok = ok && !dist.empty() && dist.back() < 0.05;

  json meta = metadata(ctx, "compare-kdv");
  meta["distances_by_decreasing_mu"] = dist;
  meta["pass"] = ok;
  OutputBundle out(ctx.out_dir, stem(ctx));
  out.stage("kdv.csv", tab.str());
  out.stage("kdv.json", meta.dump(2) + "\n");
  out.commit();
  log_of(ctx) << "compare-kdv: " << (ok ? "monotone, final distance " : "check failed, final distance ")
              << (dist.empty() ? std::string("n/a") : format_double(dist.back())) << "\n";
  return ok ? exit_ok : exit_flagged;
}

int cmd_probe_nonexistence(const Context& ctx) {
  const ProbeReport rep = nonexistence_probe(ctx.config.solve, ctx.config.sweep.ladder());
  CsvTable tab({"mu", "status", "nu_minus_m0", "sup_norm", "tail_ratio", "persisting", "vanishing"});
  for (const auto& r : rep.rungs)
    tab.add(r.mu).add(to_string(r.status)).add(r.speed_excess).add(r.sup_norm).add(r.tail).add(r.persisting).add(r.vanishing).end_row();

  json meta = metadata(ctx, "probe-nonexistence");
  meta["verdict"] = to_string(rep.verdict);
  meta["q"] = rep.q;
  meta["expansion_order"] = rep.expansion_order;
  meta["long_wave_defined"] = rep.long_wave_defined;
  meta["fit_note"] = rep.fit_note;
  if (rep.amplitude_fit) meta["amplitude_slope"] = rep.amplitude_fit->slope;
  OutputBundle out(ctx.out_dir, stem(ctx));
  out.stage("probe.csv", tab.str());
  out.stage("probe.json", meta.dump(2) + "\n");
  out.commit();
  log_of(ctx) << "probe-nonexistence: verdict " << to_string(rep.verdict) << "\n";
  if (!rep.fit_note.empty()) log_of(ctx) << "probe-nonexistence: " << rep.fit_note << "\n";
  return rep.verdict == ProbeVerdict::inconclusive ? exit_flagged : exit_ok;
}

int cmd_solitary_limit(const Context& ctx) {
  const SolitaryLimitReport rep = solitary_limit_check(ctx.config.solve, ctx.config.sweep.periods);
  CsvTable tab({"period", "nu", "energy", "tail_ratio", "accepted", "nu_difference", "energy_difference"});
  for (std::size_t i = 0; i < rep.rungs.size(); ++i) {
    const auto& r = rep.rungs[i];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    tab.add(r.period).add(r.nu).add(r.energy).add(r.tail).add(r.accepted);
    tab.add(i < rep.nu_differences.size() ? rep.nu_differences[i] : nan);
    tab.add(i < rep.energy_differences.size() ? rep.energy_differences[i] : nan).end_row();
  }
  json meta = metadata(ctx, "solitary-limit");
  meta["decreasing"] = rep.decreasing;
  meta["pass"] = rep.passed;
  OutputBundle out(ctx.out_dir, stem(ctx));
  out.stage("solitary.csv", tab.str());
  out.stage("solitary.json", meta.dump(2) + "\n");
  out.commit();
  log_of(ctx) << "solitary-limit: " << (rep.passed ? "converging" : "not converged") << "\n";
  return rep.passed ? exit_ok : exit_flagged;
}

}  // namespace wavelab::cli
