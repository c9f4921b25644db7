#include "wavelab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wavelab/errors.hpp"

namespace wavelab {

SweepRow make_row(const WaveSolution& s) {
  SweepRow r;
  r.mu = s.mu;
  r.period = s.period;
  r.nu = s.nu;
  r.sup_norm = s.diag.sup_norm;
  r.l2_norm = s.diag.l2_norm;
  r.hs_norm = s.diag.hs_norm;
  r.energy = s.diag.energy;
  r.residual = s.residual_inf;
  r.multiplier_mismatch = s.diag.multiplier_mismatch;
  r.status = s.status;
  r.fallback = s.diag.used_fallback;
  r.newton_iterations = s.diag.newton_iterations;
  return r;
}

std::vector<double> half_decade_ladder(double hi, double lo) {
  if (!(hi > 0.0) || !(lo > 0.0) || lo > hi) throw ConfigError("ladder bounds must satisfy 0 < lo <= hi");
  std::vector<double> out;
  const double top = std::log10(hi);
  for (int i = 0;; ++i) {
    const double mu = std::pow(10.0, top - 0.5 * i);
    if (mu < lo * (1.0 - 1e-9)) break;
    out.push_back(mu);
  }
  return out;
}

SweepResult sweep_mu(const SolveConfig& base, std::span<const double> ladder) {
  if (ladder.empty()) throw ConfigError("empty mu ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i - 1])) throw ConfigError("mu ladder must be strictly decreasing");

  SweepResult res;
  std::optional<WaveSolution> prev;
  for (double mu : ladder) {
    SolveConfig cfg = base;
    cfg.mu = mu;
    cfg.penalizer_level = std::max(base.penalizer_level, ladder.front());
    WaveSolution s = (prev && base.continuation.enabled && prev->mu / mu <= 4.0) ? continue_in_mu(*prev, mu, cfg)
                                                                                 : solve(cfg);
    if (s.accepted()) {
      prev = s;
    } else {
      ++res.failures;
    }
    res.solutions.push_back(std::move(s));
  }
  std::reverse(res.solutions.begin(), res.solutions.end());
  for (const auto& s : res.solutions) res.rows.push_back(make_row(s));
  res.valid = 2 * res.failures <= res.rows.size();
  return res;
}

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::speed_excess: return "nu_minus_m0";
    case Quantity::sup_norm: return "sup_norm";
    case Quantity::l2_norm: return "l2_norm";
    case Quantity::hs_norm: return "hs_norm";
  }
  return "unknown";
}

ExponentFit fit_power_law(std::string name, std::span<const double> mu, std::span<const double> value) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < mu.size() && i < value.size(); ++i) {
    if (mu[i] > 0.0 && value[i] > 0.0 && std::isfinite(value[i])) {
      lx.push_back(std::log(mu[i]));
      ly.push_back(std::log(value[i]));
    }
  }
  if (lx.size() < 5) throw ValidationError("exponent fit for " + name + " needs at least 5 positive points");
  const auto [mn, mx] = std::minmax_element(lx.begin(), lx.end());
  if ((*mx - *mn) / std::log(10.0) < 1.5 - 1e-9)
    throw ValidationError("exponent fit for " + name + " needs at least 1.5 decades in mu");

  const double n = static_cast<double>(lx.size());
  double mxv = 0.0, myv = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mxv += lx[i];
    myv += ly[i];
  }
  mxv /= n;
  myv /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mxv) * (lx[i] - mxv);
    sxy += (lx[i] - mxv) * (ly[i] - myv);
  }
  ExponentFit fit;
  fit.quantity = std::move(name);
  fit.slope = sxy / sxx;
  fit.intercept = myv - fit.slope * mxv;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    rss += e * e;
  }
  fit.rms = std::sqrt(rss / n);
  fit.mu_min = std::exp(*mn);
  fit.mu_max = std::exp(*mx);
  fit.points = lx.size();
  return fit;
}

ExponentFit fit_exponent(std::span<const SweepRow> rows, Quantity quantity, double m0) {
  std::vector<double> mu, v;
  for (const auto& r : rows) {
    if (!r.accepted()) continue;
    mu.push_back(r.mu);
    switch (quantity) {
      case Quantity::speed_excess: v.push_back(r.nu - m0); break;
      case Quantity::sup_norm: v.push_back(r.sup_norm); break;
      case Quantity::l2_norm: v.push_back(r.l2_norm); break;
      case Quantity::hs_norm: v.push_back(r.hs_norm); break;
    }
  }
  return fit_power_law(to_string(quantity), mu, v);
}

double jensen_gamma(double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("jensen constant needs q >= 0");
  const double c = std::sqrt(2.0 / 3.0);
  auto f = [&](double x) { return std::pow(c * (1.0 + std::sin(x)), 2.0 + q); };
  using boost::math::quadrature::gauss_kronrod;
  // The integrand vanishes to high order at -pi/2; start the period there.
  const double a = -0.5 * std::numbers::pi;
  const double val = gauss_kronrod<double, 61>::integrate(f, a, a + 2.0 * std::numbers::pi, 20, 1e-15);
  return val / (2.0 * std::numbers::pi);
}

double periodic_bound_margin(double energy, double mu, double period, const NonlinearitySpec& nl, double m0) {
  const double c = 2.0 * std::abs(nl.gamma()) / (2.0 + nl.q());
  return -energy / mu - m0 - c * std::pow(2.0 * mu / period, 0.5 * nl.q());
}

EnergyGainReport energy_gain_check(const SweepResult& sweep, const SymbolSpec& sym, const NonlinearitySpec& nl) {
  EnergyGainReport rep;
  const double m0 = sym.value_at_zero();
  const auto ex = long_wave_exponents(sym.expansion_order(), nl.q());
  if (!ex) rep.note = "q >= 4l: the gain exponent 1 + q alpha is undefined";
  rep.periodic_bound = true;
  for (const auto& r : sweep.rows) {
    if (!r.accepted()) continue;
    rep.mu.push_back(r.mu);
    rep.periodic_margin.push_back(periodic_bound_margin(r.energy, r.mu, r.period, nl, m0));
    if (rep.periodic_margin.back() <= 0.0) rep.periodic_bound = false;
    if (ex) rep.gain.push_back((-r.energy - m0 * r.mu) / std::pow(r.mu, 1.0 + nl.q() * ex->alpha));
  }
  if (rep.mu.empty()) {
    rep.periodic_bound = false;
    rep.note = "no accepted rows";
    return rep;
  }
  if (!rep.gain.empty()) {
    const auto [mn, mx] = std::minmax_element(rep.gain.begin(), rep.gain.end());
    rep.gain_min = *mn;
    rep.gain_max = *mx;
    rep.bounded_away = rep.gain_min > 0.0 && rep.gain_max <= 3.0 * rep.gain_min;
  }
  return rep;
}

double GkdvProfile::operator()(double x) const {
  const double s = 1.0 / std::cosh(b * x);
  return (gamma < 0.0 ? -a : a) * std::pow(s, 2.0 / q);
}

double GkdvProfile::second_derivative(double x) const {
  const double p = 2.0 / q;
  const double s = 1.0 / std::cosh(b * x);
  const double v = a * p * b * b * std::pow(s, p) * (p - (p + 1.0) * s * s);
  return gamma < 0.0 ? -v : v;
}

std::optional<GkdvProfile> make_gkdv_profile(double speed_excess, double d, double gamma, double q) {
  if (!(speed_excess > 0.0) || !(d < 0.0) || !(q > 0.0) || gamma == 0.0) return std::nullopt;
  GkdvProfile phi;
  phi.speed_excess = speed_excess;
  phi.dispersion = 0.5 * std::abs(d);
  phi.q = q;
  phi.gamma = gamma;
  phi.a = std::pow(speed_excess * (2.0 + q) / (2.0 * std::abs(gamma)), 1.0 / q);
  phi.b = 0.5 * q * std::sqrt(speed_excess / phi.dispersion);
  return phi;
}

double gkdv_ode_residual(const GkdvProfile& phi, const NonlinearitySpec& nl, std::span<const double> xs) {
  double worst = 0.0;
  for (double x : xs) {
    const double v = phi(x);
    const double r = -phi.speed_excess * v + phi.dispersion * phi.second_derivative(x) + nl.leading(v);
    worst = std::max(worst, std::abs(r));
  }
  return worst / (phi.speed_excess * phi.a);
}

GkdvComparison gkdv_profile_compare(const WaveSolution& solution, const SymbolSpec& sym, const NonlinearitySpec& nl) {
  GkdvComparison cmp;
  if (sym.expansion_order() != 1) {
    cmp.note = "long-wave comparison implemented for expansion order 1 only";
    return cmp;
  }
  if (nl.q() >= 4.0) {
    cmp.note = "q >= 4l: no long-wave limit";
    return cmp;
  }
  const auto phi = make_gkdv_profile(solution.nu - sym.value_at_zero(), sym.leading_derivative(), nl.gamma(), nl.q());
  if (!phi) {
    cmp.note = "needs nu > m(0) and m''(0) < 0";
    return cmp;
  }
  cmp.applicable = true;
  cmp.profile = *phi;

  const PeriodicGrid& grid = solution.u.grid();
  std::vector<double> fine(grid.size() * 8);
  const double h = grid.spacing() / 8.0;
  for (std::size_t j = 0; j < fine.size(); ++j) fine[j] = -0.5 * grid.period() + static_cast<double>(j) * h;
  cmp.ode_residual = gkdv_ode_residual(*phi, nl, fine);

  const RealField u = center_profile(solution.u);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double p = (*phi)(grid.point(j));
    num += (u[j] - p) * (u[j] - p);
    den += p * p;
  }
  cmp.distance = std::sqrt(num / den);
  return cmp;
}

const char* to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::elevation: return "elevation";
    case SignVerdict::depression: return "depression";
    case SignVerdict::mixed: return "mixed";
    case SignVerdict::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

SignVerdict profile_sign(const RealField& u, double tol) {
  const double scale = u.sup_norm();
  if (scale == 0.0) return SignVerdict::mixed;
  if (u.min() >= -tol * scale) return SignVerdict::elevation;
  if (u.max() <= tol * scale) return SignVerdict::depression;
  return SignVerdict::mixed;
}

KernelSign kernel_sign(const KernelSample& ks, double tol) {
  const double hi = ks.max_value();
  if (!(hi > 0.0)) return KernelSign::inconclusive;
  const double ratio = ks.min_value() / hi;
  if (ratio >= -tol) return KernelSign::nonnegative;
  if (ratio < -1e-2) return KernelSign::sign_changing;
  return KernelSign::inconclusive;
}

KernelSign kernel_sign(const SymbolSpec& sym, double tol) {
  const KernelSample ks = kernel_sample(sym, 256.0, std::size_t{1} << 17);
  if (ks.underresolved) return KernelSign::inconclusive;
  return kernel_sign(ks, tol);
}

SignVerdict sign_check(const WaveSolution& solution, const SymbolSpec& sym, double tol) {
  if (!(solution.nu > sym.value_at_zero())) return SignVerdict::not_applicable;
  if (kernel_sign(sym) != KernelSign::nonnegative) return SignVerdict::not_applicable;
  return profile_sign(solution.u, tol);
}

double tail_ratio(const RealField& u) {
  const double scale = u.sup_norm();
  if (scale == 0.0) return 0.0;
  const double quarter = 0.25 * u.grid().period();
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (std::abs(u.grid().point(j)) > quarter) worst = std::max(worst, std::abs(u[j]));
  return worst / scale;
}

SolitaryLimitReport solitary_limit_check(const SolveConfig& config, std::span<const double> periods) {
  SolitaryLimitReport rep;
  const double density = static_cast<double>(config.points) / config.period;
  std::optional<WaveSolution> prev;
  for (double p : periods) {
    SolveConfig cfg = config;
    cfg.period = p;
    cfg.points = static_cast<std::size_t>(std::llround(density * p));
    cfg.seed_period = 0.0;
    std::optional<WaveSolution> s;
    if (prev && prev->accepted() && p > prev->period) {
      const double r = p / prev->period;
      const auto ri = static_cast<std::size_t>(std::llround(r));
      if (std::abs(r - static_cast<double>(ri)) < 1e-12 * r && (ri & (ri - 1)) == 0) {
        s = continue_in_period(*prev, p, cfg);
        if (!s->accepted()) s.reset();
      }
    }
    if (!s) s = solve(cfg);
    rep.rungs.push_back({p, s->nu, s->diag.energy, tail_ratio(s->u), s->accepted()});
    prev = std::move(s);
  }
  for (std::size_t i = 0; i + 1 < rep.rungs.size(); ++i) {
    const auto& a = rep.rungs[i];
    const auto& b = rep.rungs[i + 1];
    rep.nu_differences.push_back(std::abs(a.nu - b.nu) / std::abs(a.nu));
    rep.energy_differences.push_back(a.energy != 0.0 ? std::abs(a.energy - b.energy) / std::abs(a.energy) : 0.0);
  }
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.nu_differences.size(); ++i) {
    if (!(rep.nu_differences[i] < rep.nu_differences[i - 1])) rep.decreasing = false;
    if (!(rep.energy_differences[i] < rep.energy_differences[i - 1])) rep.decreasing = false;
  }
  bool all_ok = std::all_of(rep.rungs.begin(), rep.rungs.end(), [](const SolitaryRung& r) { return r.accepted; });
  rep.passed = all_ok && rep.decreasing && !rep.nu_differences.empty() && rep.nu_differences.back() < 1e-2 &&
               rep.energy_differences.back() < 1e-2;
  return rep;
}

const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::consistent_with_nonexistence: return "consistent-with-nonexistence";
    case ProbeVerdict::branch_persists: return "branch-persists";
    case ProbeVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ProbeReport nonexistence_probe(const SolveConfig& config, std::span<const double> ladder) {
  ProbeReport rep;
  const SymbolSpec sym = config.make_symbol();
  rep.expansion_order = sym.expansion_order();
  rep.q = config.q;
  rep.long_wave_defined = long_wave_exponents(rep.expansion_order, config.q).has_value();
  if (!rep.long_wave_defined)
    rep.fit_note = "q >= 4l: alpha = 2l/(4l - q) is undefined, no mu^(q alpha) fit attempted";

  const SweepResult sweep = sweep_mu(config, ladder);
  const double m0 = sym.value_at_zero();
  for (const auto& s : sweep.solutions) {
    ProbeRung r;
    r.mu = s.mu;
    r.status = s.status;
    r.speed_excess = s.nu - m0;
    r.sup_norm = s.diag.sup_norm;
    r.tail = tail_ratio(s.u);
    r.persisting = s.accepted() && r.speed_excess > 0.0 && r.tail < 1e-3;
    r.vanishing = s.status == SolveStatus::trivial_branch || s.status == SolveStatus::newton_failed ||
                  !(r.speed_excess > 0.0) || r.tail > 1e-1;
    rep.rungs.push_back(r);
  }
  try {
    rep.amplitude_fit = fit_exponent(sweep.rows, Quantity::sup_norm, m0);
  } catch (const ValidationError& e) {
    if (!rep.fit_note.empty()) rep.fit_note += "; ";
    rep.fit_note += e.what();
  }

  // rungs are ascending in mu: the first two are the smallest levels.
  if (rep.rungs.size() >= 2) {
    const auto& a = rep.rungs[0];
    const auto& b = rep.rungs[1];
    if (a.persisting && b.persisting) rep.verdict = ProbeVerdict::branch_persists;
    else if (a.vanishing && b.vanishing) rep.verdict = ProbeVerdict::consistent_with_nonexistence;
  }
  return rep;
}

}  // namespace wavelab
