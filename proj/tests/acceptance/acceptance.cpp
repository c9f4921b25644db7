// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"
#include "wavelab/scaling.hpp"

using namespace wavelab;

namespace {
constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SolveConfig whitham(double P, std::size_t N) {
  SolveConfig c;
  c.period = P;
  c.points = N;
  return c;
}

const std::vector<double>& ladder() {
  static const auto l = half_decade_ladder(1e-2, 1e-4);
  return l;
}

const SweepResult& sweep_q1() {
  static const SweepResult s = sweep_mu(whitham(128.0, 2048), ladder());
  return s;
}

SolveConfig q2_config() {
  auto c = whitham(65536.0, 16384);
  c.q = 2.0;
  c.seed_period = 1024.0;
  return c;
}

const SweepResult& sweep_q2() {
  static const SweepResult s = sweep_mu(q2_config(), ladder());
  return s;
}

Outcome slopes(const SweepResult& s, double t_speed, double tol_speed, double t_sup, double tol_sup,
               std::optional<std::pair<double, double>> hs) {
  Outcome o;
  try {
    const double a = fit_exponent(s.rows, Quantity::speed_excess, 1.0).slope;
    const double b = fit_exponent(s.rows, Quantity::sup_norm, 1.0).slope;
    o.pass = s.valid && std::abs(a - t_speed) <= tol_speed && std::abs(b - t_sup) <= tol_sup;
    o.detail = fmt("nu-1 slope %.4f (%.3g +- %.2g), sup slope %.4f (%.3g +- %.2g)", a, t_speed, tol_speed, b, t_sup,
                   tol_sup);
    if (hs) {
      const double c = fit_exponent(s.rows, Quantity::hs_norm, 1.0).slope;
      o.pass = o.pass && std::abs(c - hs->first) <= hs->second;
      o.detail += fmt(", H1 slope %.4f (%.3g +- %.2g)", c, hs->first, hs->second);
    }
    o.detail += fmt(", %zu/%zu rungs accepted", s.rows.size() - s.failures, s.rows.size());
  } catch (const std::exception& e) {
    o.detail = e.what();
  }
  return o;
}

Outcome criterion1() { return slopes(sweep_q1(), 2.0 / 3.0, 0.07, 2.0 / 3.0, 0.07, std::pair{0.5, 0.05}); }

Outcome criterion2() { return slopes(sweep_q2(), 2.0, 0.15, 1.0, 0.10, std::nullopt); }

Outcome criterion3() {
  Outcome o{true, {}};
  double worst_res = 0.0, worst_mult = 0.0;
  std::size_t n = 0;
  auto check = [&](const SweepResult& s, const SolveConfig& base) {
    for (const auto& sol : s.solutions) {
      if (!sol.accepted()) continue;
      ++n;
      const auto prob = base.make_problem(sol.u.grid(), sol.mu);
      std::vector<double> F(sol.u.size());
      prob.residual(sol.u.values(), sol.nu, F);
      const double r = test::sup(F) / std::max(1.0, sol.u.sup_norm());
      const double m = std::abs(prob.multiplier(sol.u.values()) - sol.nu) / std::abs(sol.nu);
      worst_res = std::max(worst_res, r);
      worst_mult = std::max(worst_mult, m);
    }
  };
  check(sweep_q1(), whitham(128.0, 2048));
  check(sweep_q2(), q2_config());
  o.pass = n > 0 && worst_res <= 1e-10 && worst_mult <= 1e-9;
  o.detail = fmt("%zu solutions, max scaled residual %.2e, max multiplier mismatch %.2e", n, worst_res, worst_mult);
  return o;
}

Outcome criterion4() {
  bool ok = true;
  double min_gap = 1e300;
  for (double q : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double g = jensen_gamma(q);
    ok = ok && g > 1.0;
    min_gap = std::min(min_gap, g - 1.0);
  }
  // trig moments: mean (1+sin)^3 = 5/2, mean (1+sin)^4 = 1 + 6/2 + 3/8 = 35/8
  const double g1 = 2.5 * std::pow(2.0 / 3.0, 1.5);
  const double g2 = 35.0 / 8.0 * std::pow(2.0 / 3.0, 2.0);
  const double e1 = std::abs(jensen_gamma(1.0) - g1), e2 = std::abs(jensen_gamma(2.0) - g2);
  const double e0 = std::abs(jensen_gamma(0.0) - 1.0);
  ok = ok && e1 <= 1e-9 && e2 <= 1e-9 && e0 <= 1e-12;
  return {ok, fmt("min Gamma_q - 1 = %.3e, |Gamma_1 err| %.1e, |Gamma_2 err| %.1e, |Gamma_0 - 1| %.1e", min_gap, e1,
                  e2, e0)};
}

Outcome criterion5() {
  const auto m = whitham_symbol();
  const NonlinearitySpec nl(1.0, 1.0);
  double eq = 0, ec = 0, el = 0;
  for (double P : {32.0, 128.0, 1024.0}) {
    for (double mu : {1e-4, 1e-3, 1e-2}) {
      PeriodicGrid g(P, 1024);
      const auto u = initial_guess(mu, g, 1.0);
      const auto e = energy(u, m, nl, mu);
      eq = std::max(eq, std::abs(e.Q - mu) / mu);
      const auto c = to_spectral(u);
      ec = std::max({ec, std::abs(c.coeff(0) - 2 * std::sqrt(mu / 3)), std::abs(std::abs(c.coeff(1)) - std::sqrt(mu / 3)),
                     std::abs(std::abs(c.coeff(-1)) - std::sqrt(mu / 3))});
      const double L = -mu * (2.0 / 3.0 * m(0.0) + 1.0 / 3.0 * m(2 * pi / P));
      el = std::max(el, std::abs(e.L_part - L) / std::abs(L));
    }
  }
  return {eq <= 1e-14 && ec <= 1e-13 && el <= 1e-12,
          fmt("Q rel err %.1e, coefficient err %.1e, L_part rel err %.1e", eq, ec, el)};
}

Outcome criterion6() {
  PeriodicGrid g(20.0, 64);
  const auto ks = kernel_from_function([](double x) { return std::sqrt(pi / 2) * std::exp(-std::abs(x)); }, 80.0,
                                       1 << 18);
  const auto rep = periodization_check(fractional_symbol(-2.0), g, ks);
  return {rep.max_relative_deviation <= 1e-6,
          fmt("max deviation %.2e at k = %d over |k| <= %d", rep.max_relative_deviation, rep.worst_frequency,
              rep.max_frequency)};
}

Outcome criterion7() {
  double worst = -1e300;
  bool ok = true;
  for (const auto& s : sweep_q1().solutions) {
    ok = ok && s.accepted();
    worst = std::max(worst, -s.u.min() / s.u.sup_norm());
  }
  auto c = whitham(128.0, 2048);
  c.gamma = -1.0;
  const auto neg = solve(c);
  const double up = neg.u.max() / neg.u.sup_norm();
  ok = ok && neg.accepted() && worst <= 1e-8 && up <= 1e-8;
  return {ok, fmt("max -min(u)/|u| over ladder %.2e, paired gamma<0 max(u)/|u| %.2e", worst, up)};
}

Outcome criterion8() {
  const auto& s = sweep_q1();
  const NonlinearitySpec nl(1.0, 1.0);
  std::vector<double> d;
  double ode = 0.0;
  for (std::size_t i = s.solutions.size(); i-- > 0;) {
    const auto cmp = gkdv_profile_compare(s.solutions[i], whitham_symbol(), nl);
    if (!cmp.applicable) return {false, cmp.note};
    d.push_back(cmp.distance);
    ode = std::max(ode, cmp.ode_residual);
  }
  bool mono = true;
  for (std::size_t i = 1; i < d.size(); ++i) mono = mono && d[i] < d[i - 1];
  std::string seq;
  for (double v : d) seq += fmt("%s%.2e", seq.empty() ? "" : " ", v);
  return {mono && d.back() < 0.05 && ode < 1e-10, "distances " + seq + fmt(", profile ODE residual %.1e", ode)};
}

Outcome criterion9() {
  auto c = whitham(64.0, 1024);
  c.mu = 1e-3;
  const std::vector<double> periods{64.0, 128.0, 256.0};
  const auto r = solitary_limit_check(c, periods);
  const double tail = r.rungs.back().tail;
  const bool ok = r.passed && tail < 1e-3;
  return {ok, fmt("dnu %.2e -> %.2e, dE %.2e -> %.2e, tail %.2e", r.nu_differences[0], r.nu_differences[1],
                  r.energy_differences[0], r.energy_differences[1], tail)};
}

// Transform, gradient, multiplier and identity properties on one configuration.
struct PropertyResult {
  double roundtrip = 0, parseval = 0, order = 1e300, adjoint = 0, split = 0, el_gap = 0;
  bool deterministic = true;
};

double fd_order(const WaveProblem& prob, const std::vector<double>& u, const std::vector<double>& v) {
  std::vector<double> g(u.size()), w(u.size());
  prob.gradient(u, g);
  const double exact = prob.dot(g, v);
  const double hs[3] = {1e-2, 1e-3, 1e-4};
  double err[3];
  for (int i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j] + hs[i] * v[j];
    const double ep = prob.energy(w).penalized();
    for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j] - hs[i] * v[j];
    const double em = prob.energy(w).penalized();
    err[i] = std::abs((ep - em) / (2 * hs[i]) - exact);
  }
  return std::log(err[0] / err[2]) / std::log(hs[0] / hs[2]);
}

PropertyResult properties(bool penalizer) {
  PropertyResult r;
  std::mt19937_64 rng(2024);
  // transforms on every size
  for (std::size_t n = 8; n <= 4096; n *= 2) {
    PeriodicGrid g(0.5 * n, n);
    const auto u = test::smooth_random(g, rng, static_cast<int>(n / 2 - 1));
    const auto back = to_real(to_spectral(u));
    r.roundtrip = std::max(r.roundtrip, test::max_abs_diff(back.values(), u.values()) / u.sup_norm());
    double quad = 0;
    for (double x : u.values()) quad += x * x;
    quad *= g.spacing();
    double sum = 0;
    const auto uh = to_spectral(u);
    for (const auto& c : uh.coeffs()) sum += std::norm(c);
    r.parseval = std::max(r.parseval, std::abs(sum - quad) / quad);
    const auto sp = frequency_split(u, FrequencySplitSpec(0.5 * g.nyquist_wavenumber(), 0.1 * g.nyquist_wavenumber()));
    const auto full = to_spectral(u);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex s = sp.low_coeffs.coeffs()[j] + sp.high_coeffs.coeffs()[j];
      const double scale = std::max(std::abs(full.coeffs()[j]), 1e-300);
      r.split = std::max(r.split, std::abs(s - full.coeffs()[j]) / (scale * std::numeric_limits<double>::epsilon()));
    }
  }

  const auto m = whitham_symbol();
  PeriodicGrid g(10.0, 64);
  for (int pair = 0; pair < 20; ++pair) {
    const auto u = test::smooth_random(g, rng, 8, 0.5);
    const auto v = test::smooth_random(g, rng, 8, 3.0);
    std::optional<PenalizerSpec> pen;
    if (penalizer) pen = PenalizerSpec(10 * std::sqrt(hsp_norm_squared(u, 1.0)));
    const WaveProblem prob(g, m, NonlinearitySpec(1.0, 1.0), 1.0, pen);
    const std::vector<double> uu(u.values().begin(), u.values().end()), vv(v.values().begin(), v.values().end());
    r.order = std::min(r.order, fd_order(prob, uu, vv));
    const double a = inner_product(apply_multiplier(u, m), v), b = inner_product(u, apply_multiplier(v, m));
    r.adjoint = std::max(r.adjoint, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }

  auto c = whitham(128.0, 1024);
  c.penalizer = penalizer;
  const auto s1 = solve(c);
  const auto s2 = solve(c);
  for (std::size_t j = 0; j < s1.u.size(); ++j) r.deterministic = r.deterministic && s1.u[j] == s2.u[j];
  r.deterministic = r.deterministic && s1.nu == s2.nu && s1.diag.energy == s2.diag.energy;
  r.el_gap = el_identity_check(s1.u, m, c.make_nonlinearity(), c.mu).gap;
  const auto rough = test::smooth_random(PeriodicGrid(12.0, 64), rng, 10, 0.01);
  r.el_gap = std::max(r.el_gap, el_identity_check(rough, m, NonlinearitySpec(1.0, 1.0), 1.0).gap);
  return r;
}

Outcome criterion10() {
  Outcome o{true, {}};
  for (bool pen : {false, true}) {
    const auto r = properties(pen);
    const bool ok = r.roundtrip <= 1e-13 && r.parseval <= 1e-12 && r.order >= 1.9 && r.adjoint <= 1e-12 &&
                    r.split <= 1.0 && r.el_gap < 1e-10 && r.deterministic;
    o.pass = o.pass && ok;
    o.detail += fmt("%s[penalizer %s] roundtrip %.1e, parseval %.1e, fd order %.2f, adjoint %.1e, split %.1f ulp, "
                    "identity gap %.1e, deterministic %s",
                    o.detail.empty() ? "" : "; ", pen ? "untriggered" : "off", r.roundtrip, r.parseval, r.order,
                    r.adjoint, r.split, r.el_gap, r.deterministic ? "yes" : "no");
  }
  return o;
}

Outcome criterion11() {
  auto c = whitham(512.0, 4096);
  const auto l = half_decade_ladder(1e-2, 3e-4);
  c.q = 4.0;
  const auto crit = nonexistence_probe(c, l);
  c.q = 1.0;
  const auto ctrl = nonexistence_probe(c, l);
  const bool ok = crit.rungs.size() == l.size() && ctrl.verdict == ProbeVerdict::branch_persists;
  return {ok, fmt("q=4 verdict %s, q=1 control %s", to_string(crit.verdict), to_string(ctrl.verdict))};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"whitham scaling laws", criterion1},
      {"second parameter point q=2", criterion2},
      {"Euler-Lagrange residual and multiplier", criterion3},
      {"Jensen constant", criterion4},
      {"test-function identities", criterion5},
      {"kernel periodization", criterion6},
      {"wave sign", criterion7},
      {"long-wave profile", criterion8},
      {"solitary limit", criterion9},
      {"property suites", criterion10},
      {"nonexistence probe", criterion11},
  };
  int failed = 0, idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", idx - failed, idx);
  return failed == 0 ? 0 : 1;
}
