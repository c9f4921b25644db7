#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavelab/functionals.hpp"
#include "wavelab/nonlinearity.hpp"
#include "wavelab/spectral.hpp"
#include "wavelab/symbols.hpp"

namespace wavelab {

struct ProjectedGradientOptions {
  int max_iter = 200000;
  double tol = 1e-7;  // stop when |g_t|_{L^2} <= tol * |u|_{L^2}
  double tau_initial = 1.0;
  double tau_min = 1e-10;
  double tau_max = 1e6;
  double armijo = 1e-4;
};

struct NewtonOptions {
  int max_iter = 30;
  double tol = 1e-10;        // accept when |F|_inf <= tol * max(1, |u|_inf)
  double step_tol = 1e-9;    // and the last update satisfied |du|_inf <= step_tol * |u|_inf
  double linear_tol = 1e-12;
  int restart = 80;
  int max_restarts = 20;
};

struct ContinuationOptions {
  bool enabled = true;
  std::vector<double> mu_ladder;
  std::vector<double> period_ladder;
};

struct SolveConfig {
  double mu = 1e-3;
  double period = 128.0;
  std::size_t points = 1024;
  double sobolev_index = 1.0;

  std::string symbol = "whitham";
  SymbolParams symbol_params;

  double q = 1.0;
  double gamma = 1.0;
  LeadingForm form = LeadingForm::absolute;
  CutoffSpec cutoff{true, 0.25, 1.0};

  bool penalizer = true;
  std::optional<double> penalizer_radius;  // default 10 sqrt(2 mu_max)
  /// Largest level the penalizer radius must accommodate; 0 means mu.
  double penalizer_level = 0.0;

  /// When positive and below `period`, the cold solve runs on a period this
  /// long at the same spacing and is then continued up to `period` by doubling.
  double seed_period = 0.0;

  ProjectedGradientOptions pg;
  NewtonOptions newton;
  ContinuationOptions continuation;

  /// Throws ConfigError / DomainError on invalid settings.
  void validate() const;
  PeriodicGrid grid() const { return PeriodicGrid(period, points); }
  SymbolSpec make_symbol() const { return builtin_symbol(symbol, symbol_params); }
  NonlinearitySpec make_nonlinearity() const { return NonlinearitySpec(q, gamma, form, cutoff); }
  std::optional<PenalizerSpec> make_penalizer() const;
  WaveProblem make_problem(const PeriodicGrid& grid, double level) const;
};

enum class SolveStatus { accepted, trivial_branch, penalty_active, cutoff_active, newton_failed };
const char* to_string(SolveStatus s);

struct SolveDiagnostics {
  double energy = 0.0;
  double sup_norm = 0.0;
  double l2_norm = 0.0;
  double hs_norm = 0.0;
  bool penalty_active = false;
  bool cutoff_active = false;
  bool nonconstant = false;
  bool pg_failed = false;
  bool used_fallback = false;
  int pg_iterations = 0;
  int newton_iterations = 0;
  int linear_iterations = 0;
  double multiplier_mismatch = 0.0;  // |multiplier(u) - nu| / |nu|
  std::vector<double> residual_history;
  std::vector<std::string> log;
};

struct WaveSolution {
  explicit WaveSolution(RealField profile) : u(std::move(profile)) {}

  RealField u;
  double nu = 0.0;
  double mu = 0.0;
  double period = 0.0;
  double residual_inf = 0.0;
  SolveStatus status = SolveStatus::newton_failed;
  SolveDiagnostics diag;

  bool accepted() const noexcept { return status == SolveStatus::accepted; }
};

/// A sign(gamma) sqrt(2/3) [1 + sin(2 pi x / P)] with A = sqrt(2 mu / P).
RealField initial_guess(double mu, const PeriodicGrid& grid, double gamma);

struct PgResult {
  RealField u;
  int iterations = 0;
  int accepted_steps = 0;
  double tangent_norm = 0.0;
  double energy_initial = 0.0;
  double energy_final = 0.0;
  bool failed = false;  // step collapse
};

/// Descent on the sphere Q = mu for the penalised energy. Requires Q(u0) = mu.
PgResult projected_gradient(const WaveProblem& problem, const RealField& u0, const ProjectedGradientOptions& opts);

/// Translates u so the extremum sits at x = 0 (via the phase of the first
/// Fourier coefficient) and projects onto even profiles.
RealField center_profile(const RealField& u);

/// Bordered Newton on (Lu - nu u + n(u), Q(u) - mu) = 0 within even profiles.
WaveSolution newton_refine(const WaveProblem& problem, const RealField& u0, double nu0, const NewtonOptions& opts);

WaveSolution solve(const SolveConfig& config);

/// Warm start from the long-wave rescaling; requires mu_new within a factor 4.
WaveSolution continue_in_mu(const WaveSolution& solution, double mu_new, const SolveConfig& config);

/// Embeds a centred solution in a longer period at the same spacing and
/// refines. new_period / period must be a power of two.
WaveSolution continue_in_period(const WaveSolution& solution, double new_period, const SolveConfig& config);

/// alpha = 2l/(4l - q), beta = q/(4l - q); nullopt when q >= 4l.
struct LongWaveExponents {
  double alpha;
  double beta;
};
std::optional<LongWaveExponents> long_wave_exponents(int l, double q);

}  // namespace wavelab
