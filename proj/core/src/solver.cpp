#include "wavelab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "krylov.hpp"
#include "wavelab/errors.hpp"

namespace wavelab {
namespace {

double sup_abs(std::span<const double> u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

void renormalize(const WaveProblem& prob, std::vector<double>& u) {
  const double s = std::sqrt(prob.level() / prob.charge(u));
  for (double& x : u) x *= s;
}

void symmetrize(std::vector<double>& u) {
  const std::size_t n = u.size();
  for (std::size_t j = 1; j < n / 2; ++j) {
    const double avg = 0.5 * (u[j] + u[n - j]);
    u[j] = avg;
    u[n - j] = avg;
  }
}

double penalized_energy(const WaveProblem& prob, std::span<const double> u) {
  try {
    return prob.energy(u).penalized();
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::accepted: return "accepted";
    case SolveStatus::trivial_branch: return "trivial_branch";
    case SolveStatus::penalty_active: return "penalty_active";
    case SolveStatus::cutoff_active: return "cutoff_active";
    case SolveStatus::newton_failed: return "newton_failed";
  }
  return "unknown";
}

void SolveConfig::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive, got " + std::to_string(mu));
  (void)grid();
  if (!(sobolev_index >= 0.0)) throw ConfigError("sobolev index must be nonnegative");
  (void)make_nonlinearity();
  if (pg.max_iter < 0 || !(pg.tol > 0.0) || !(pg.tau_initial > 0.0) || !(pg.tau_min > 0.0))
    throw ConfigError("projected gradient options must be positive");
  if (newton.max_iter < 0 || !(newton.tol > 0.0) || !(newton.step_tol > 0.0) || !(newton.linear_tol > 0.0))
    throw ConfigError("newton tolerances must be positive");
  if (penalizer_radius && !(*penalizer_radius > 0.0)) throw ConfigError("penalizer radius must be positive");
  if (seed_period > 0.0 && seed_period < period) {
    const double ratio = period / seed_period;
    const auto r = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(r)) > 1e-12 * ratio || (r & (r - 1)) != 0 || points % r != 0)
      throw ConfigError("period / seed_period must be a power of two dividing the point count");
    (void)PeriodicGrid(seed_period, points / r);
  }
}

std::optional<PenalizerSpec> SolveConfig::make_penalizer() const {
  if (!penalizer) return std::nullopt;
  if (penalizer_radius) return PenalizerSpec(*penalizer_radius, sobolev_index);
  double top = std::max(mu, penalizer_level);
  for (double m : continuation.mu_ladder) top = std::max(top, m);
  return PenalizerSpec::for_levels(top, sobolev_index);
}

WaveProblem SolveConfig::make_problem(const PeriodicGrid& g, double level) const {
  return WaveProblem(g, make_symbol(), make_nonlinearity(), level, make_penalizer(), sobolev_index);
}

std::optional<LongWaveExponents> long_wave_exponents(int l, double q) {
  const double den = 4.0 * l - q;
  if (!(den > 0.0)) return std::nullopt;
  return LongWaveExponents{2.0 * l / den, q / den};
}

RealField initial_guess(double mu, const PeriodicGrid& grid, double gamma) {
  if (!(mu > 0.0)) throw DomainError("initial guess needs mu > 0");
  const double amp = std::sqrt(2.0 * mu / grid.period()) * std::sqrt(2.0 / 3.0) * (gamma < 0.0 ? -1.0 : 1.0);
  const double w = 2.0 * std::numbers::pi / grid.period();
  return RealField::from_function(grid, [&](double x) { return amp * (1.0 + std::sin(w * x)); });
}

PgResult projected_gradient(const WaveProblem& prob, const RealField& u0, const ProjectedGradientOptions& opts) {
  const double mu = prob.level();
  if (std::abs(prob.charge(u0.values()) - mu) > 1e-10 * mu)
    throw DomainError("projected gradient needs Q(u0) = mu");
  const std::size_t n = u0.size();
  std::vector<double> u(u0.values().begin(), u0.values().end());
  std::vector<double> g(n), gt(n), trial(n), u_prev(n), gt_prev(n);

  PgResult res{u0};
  double e = penalized_energy(prob, u);
  res.energy_initial = e;
  const double stop = opts.tol * std::sqrt(2.0 * mu);
  double tau = opts.tau_initial;
  bool have_prev = false;

  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    prob.gradient(u, g);
    const double lam = prob.dot(g, u) / (2.0 * mu);
    for (std::size_t j = 0; j < n; ++j) gt[j] = g[j] - lam * u[j];
    const double gnorm2 = prob.dot(gt, gt);
    res.tangent_norm = std::sqrt(gnorm2);
    if (res.tangent_norm <= stop) break;

    if (have_prev) {
      double ss = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double s = u[j] - u_prev[j];
        ss += s * s;
        sy += s * (gt[j] - gt_prev[j]);
      }
      tau = sy > 0.0 ? std::clamp(ss / sy, 1e-3 * opts.tau_initial, opts.tau_max) : opts.tau_initial;
    }

    double e_new = e;
    for (;;) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = u[j] - tau * gt[j];
      renormalize(prob, trial);
      e_new = penalized_energy(prob, trial);
      if (e_new <= e - opts.armijo * tau * gnorm2) break;
      tau *= 0.5;
      if (tau < opts.tau_min) break;
    }
    if (tau < opts.tau_min) {
      res.failed = true;
      break;
    }
    u_prev.swap(u);
    gt_prev.swap(gt);
    u.swap(trial);
    e = e_new;
    have_prev = true;
    ++res.accepted_steps;
  }
  res.energy_final = e;
  res.u = RealField(u0.grid(), std::move(u));
  return res;
}

RealField center_profile(const RealField& u) {
  const SpectralField c = to_spectral(u);
  const Complex c1 = c.coeff(1);
  RealField out = u;
  if (std::abs(c1) > 1e-14 * (std::abs(c.coeff(0)) + 1e-300)) {
    // For an even profile centred at x0, arg c1 = -xi_1 x0 (mod pi).
    const double xi1 = u.grid().wavenumber(1);
    const double x0 = -std::arg(c1) / xi1;
    const double candidates[2] = {x0, x0 + 0.5 * u.grid().period()};
    const auto vals = evaluate_interpolant(u, candidates);
    const double shift = std::abs(vals[0]) >= std::abs(vals[1]) ? candidates[0] : candidates[1];
    out = translate(u, -shift);
  }
  std::vector<double> v(out.values().begin(), out.values().end());
  symmetrize(v);
  return RealField(u.grid(), std::move(v));
}

namespace {

WaveSolution finalize(const WaveProblem& prob, std::vector<double> u, double nu, SolveDiagnostics diag,
                      bool converged) {
  const PeriodicGrid& grid = prob.grid();
  std::vector<double> r(u.size());
  prob.residual(u, nu, r);
  WaveSolution sol(RealField(grid, std::move(u)));
  sol.nu = nu;
  sol.mu = prob.level();
  sol.period = grid.period();
  sol.residual_inf = sup_abs(r);

  const auto v = sol.u.values();
  const EnergyBreakdown e = prob.energy(v);
  diag.energy = e.E;
  diag.sup_norm = sup_abs(v);
  diag.l2_norm = std::sqrt(prob.dot(v, v));
  diag.hs_norm = std::sqrt(e.hsp_norm_sq);
  diag.penalty_active = prob.penalizer() && prob.penalizer()->active(e.hsp_norm_sq);
  diag.cutoff_active = diag.sup_norm > prob.nonlinearity().threshold(prob.level());
  const double mean = sol.u.mean();
  double dev = 0.0;
  for (double x : v) dev += (x - mean) * (x - mean);
  dev = std::sqrt(dev * grid.spacing());
  diag.nonconstant = dev > 1e-6 * diag.l2_norm;
  try {
    diag.multiplier_mismatch = std::abs(prob.multiplier(v) - nu) / std::abs(nu);
  } catch (const DomainError&) {
    diag.multiplier_mismatch = std::numeric_limits<double>::infinity();
  }

  if (!converged) {
    sol.status = SolveStatus::newton_failed;
  } else if (!diag.nonconstant) {
    sol.status = SolveStatus::trivial_branch;
  } else if (diag.penalty_active) {
    sol.status = SolveStatus::penalty_active;
  } else if (diag.cutoff_active) {
    sol.status = SolveStatus::cutoff_active;
  } else {
    sol.status = SolveStatus::accepted;
  }
  sol.diag = std::move(diag);
  return sol;
}

}  // namespace

WaveSolution newton_refine(const WaveProblem& prob, const RealField& u0, double nu0, const NewtonOptions& opts) {
  const std::size_t n = u0.size();
  const double mu = prob.level();
  const double dx = prob.grid().spacing();
  const auto& L = prob.dispersion();
  const auto& nl = prob.nonlinearity();

  RealField centred = center_profile(u0);
  std::vector<double> u(centred.values().begin(), centred.values().end());
  renormalize(prob, u);
  double nu = nu0;

  SolveDiagnostics diag;
  std::vector<double> F(n), dn(n), rhs(n + 1), step(n + 1), inv(L.half_weights().size());
  bool converged = false;
  double last_step = std::numeric_limits<double>::infinity();

  for (int it = 0;; ++it) {
    prob.residual(u, nu, F);
    const double c = prob.charge(u) - mu;
    const double r = sup_abs(F);
    const double scale = sup_abs(u);
    diag.residual_history.push_back(r);
    if (!std::isfinite(r)) break;
    if (r <= opts.tol * std::max(1.0, scale) && last_step <= opts.step_tol * scale &&
        std::abs(c) <= 1e-12 * mu) {
      converged = true;
      break;
    }
    if (it >= opts.max_iter) {
      // One more criterion: a residual already at roundoff cannot be improved.
      converged = r <= 1e-3 * opts.tol * std::max(1.0, scale) && std::abs(c) <= 1e-12 * mu;
      break;
    }
    diag.newton_iterations = it + 1;

    apply_n_prime(nl, mu, u, dn);
    if (nl.q() < 1.0) {
      // leading n' is bounded; this only catches a singular remainder derivative
      const double cap = 1.0 / std::sqrt(std::numeric_limits<double>::epsilon());
      std::size_t clamped = 0;
      for (double& v : dn)
        if (std::abs(v) > cap) {
          v = std::copysign(cap, v);
          ++clamped;
        }
      if (clamped > 0)
        diag.log.push_back("clamped " + std::to_string(clamped) + " Jacobian entries at " + std::to_string(cap));
    }
    const auto hw = L.half_weights();
    for (std::size_t k = 0; k < hw.size(); ++k) {
      double d = hw[k] - nu;
      if (std::abs(d) < 1e-13) d = d < 0.0 ? -1e-13 : 1e-13;
      inv[k] = 1.0 / d;
    }
    const DiagonalOperator precond(prob.grid(), inv);
    const double uu = prob.dot(u, u);

    auto jac = [&](std::span<const double> z, std::span<double> out) {
      const auto v = z.first(n);
      const double dnu = z[n];
      L.apply(v, out.first(n));
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        out[j] += (dn[j] - nu) * v[j] - dnu * u[j];
        dot += u[j] * v[j];
      }
      out[n] = dot * dx;
    };
    auto pre = [&](std::span<const double> z, std::span<double> out) {
      precond.apply(z.first(n), out.first(n));
      out[n] = z[n] / uu;
    };
    for (std::size_t j = 0; j < n; ++j) rhs[j] = -F[j];
    rhs[n] = -c;
    std::fill(step.begin(), step.end(), 0.0);
    const detail::GmresResult lin =
        detail::gmres(jac, pre, rhs, step, {opts.restart, opts.max_restarts, opts.linear_tol});
    diag.linear_iterations += lin.iterations;
    if (!lin.converged) diag.log.push_back("linear solve stopped at relative residual " + std::to_string(lin.relative_residual));

    // The odd part of the step is the (near-null) translation mode; drop it.
    nu += step[n];
    step.resize(n);
    symmetrize(step);
    last_step = sup_abs(step);
    for (std::size_t j = 0; j < n; ++j) u[j] += step[j];
    step.resize(n + 1);
  }
  return finalize(prob, std::move(u), nu, std::move(diag), converged);
}

WaveSolution solve(const SolveConfig& config) {
  config.validate();
  PeriodicGrid grid = config.grid();
  std::size_t doublings = 0;
  if (config.seed_period > 0.0 && config.seed_period < config.period) {
    const auto r = static_cast<std::size_t>(std::llround(config.period / config.seed_period));
    grid = PeriodicGrid(config.seed_period, config.points / r);
    while ((std::size_t{1} << doublings) < r) ++doublings;
  }
  const WaveProblem prob = config.make_problem(grid, config.mu);
  const RealField seed = initial_guess(config.mu, grid, config.gamma);
  const PgResult pg = projected_gradient(prob, seed, config.pg);

  RealField start = center_profile(pg.u);
  std::vector<double> v(start.values().begin(), start.values().end());
  renormalize(prob, v);
  start = RealField(grid, std::move(v));
  const double nu0 = prob.multiplier(start.values());

  WaveSolution sol = newton_refine(prob, start, nu0, config.newton);
  sol.diag.pg_iterations = pg.iterations;
  sol.diag.pg_failed = pg.failed;
  if (pg.failed) sol.diag.log.push_back("projected gradient step collapsed; continued from best iterate");

  double p = grid.period();
  for (std::size_t i = 0; i < doublings && sol.status != SolveStatus::newton_failed; ++i) {
    p *= 2.0;
    WaveSolution next = continue_in_period(sol, p, config);
    next.diag.pg_iterations = sol.diag.pg_iterations;
    next.diag.pg_failed = sol.diag.pg_failed;
    sol = std::move(next);
  }
  return sol;
}

}  // namespace wavelab
