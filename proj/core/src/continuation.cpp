#include <cmath>

#include "wavelab/errors.hpp"
#include "wavelab/solver.hpp"

namespace wavelab {
namespace {

// Fraction of L^2 mass carried by |k| > N/4.
double high_band_fraction(const RealField& u) {
  const SpectralField c = to_spectral(u);
  const int n = static_cast<int>(u.size());
  double hi = 0.0, total = 0.0;
  for (int k = -n / 2; k < n / 2; ++k) {
    const double a = std::norm(c.coeff(k));
    total += a;
    if (std::abs(k) > n / 4) hi += a;
  }
  return total > 0.0 ? hi / total : 0.0;
}

RealField rescaled(const RealField& u, double level) {
  double uu = 0.0;
  for (double x : u.values()) uu += x * x;
  const double s = std::sqrt(2.0 * level / (uu * u.grid().spacing()));
  return s * u;
}

}  // namespace

WaveSolution continue_in_mu(const WaveSolution& solution, double mu_new, const SolveConfig& config) {
  if (!(mu_new > 0.0)) throw DomainError("continuation target mu must be positive");
  const double r = mu_new / solution.mu;
  if (r > 4.0 || r < 0.25) throw ConfigError("continuation step in mu larger than a factor 4");

  SolveConfig cfg = config;
  cfg.mu = mu_new;
  cfg.period = solution.period;
  cfg.points = solution.u.size();
  const PeriodicGrid& grid = solution.u.grid();
  const SymbolSpec sym = cfg.make_symbol();

  std::vector<std::string> log;
  RealField warm = solution.u;
  if (const auto ex = long_wave_exponents(sym.expansion_order(), cfg.q)) {
    const double sx = std::pow(r, ex->beta);
    std::vector<double> xs = grid.points();
    for (double& x : xs) x *= sx;
    warm = std::pow(r, ex->alpha) * RealField(grid, evaluate_interpolant(solution.u, xs));
  } else {
    log.emplace_back("no long-wave scaling for q >= 4l; warm start is the unscaled profile");
  }

  bool fallback = false;
  if (high_band_fraction(warm) > 1e-10) {
    log.emplace_back("rescaled warm start left the resolved band; cold start");
    fallback = true;
  }

  WaveSolution out(warm);
  if (!fallback) {
    const WaveProblem prob = cfg.make_problem(grid, mu_new);
    const RealField start = rescaled(center_profile(warm), mu_new);
    out = newton_refine(prob, start, prob.multiplier(start.values()), cfg.newton);
    if (out.status == SolveStatus::newton_failed) {
      log.emplace_back("warm-started Newton failed; cold start");
      fallback = true;
    }
  }
  if (fallback) {
    out = solve(cfg);
    out.diag.used_fallback = true;
  }
  out.diag.log.insert(out.diag.log.begin(), log.begin(), log.end());
  return out;
}

WaveSolution continue_in_period(const WaveSolution& solution, double new_period, const SolveConfig& config) {
  const double ratio = new_period / solution.period;
  const auto r = static_cast<std::size_t>(std::llround(ratio));
  if (r < 1 || std::abs(ratio - static_cast<double>(r)) > 1e-12 * ratio || (r & (r - 1)) != 0)
    throw ConfigError("period continuation needs a power-of-two period ratio");

  const std::size_t n_old = solution.u.size();
  const std::size_t n_new = n_old * r;
  const PeriodicGrid grid(new_period, n_new);
  const RealField centred = center_profile(solution.u);
  std::vector<double> v(n_new, 0.0);
  const std::size_t offset = (n_new - n_old) / 2;
  for (std::size_t j = 0; j < n_old; ++j) v[offset + j] = centred[j];
  const RealField start = rescaled(RealField(grid, std::move(v)), solution.mu);

  SolveConfig cfg = config;
  cfg.mu = solution.mu;
  cfg.period = new_period;
  cfg.points = n_new;
  const WaveProblem prob = cfg.make_problem(grid, solution.mu);
  WaveSolution out = newton_refine(prob, start, solution.nu, cfg.newton);
  out.diag.used_fallback = solution.diag.used_fallback;
  return out;
}

}  // namespace wavelab
