#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavelab/solver.hpp"

namespace wavelab {

struct SweepRow {
  double mu = 0.0;
  double period = 0.0;
  double nu = 0.0;
  double sup_norm = 0.0;
  double l2_norm = 0.0;
  double hs_norm = 0.0;
  double energy = 0.0;
  double residual = 0.0;
  double multiplier_mismatch = 0.0;
  SolveStatus status = SolveStatus::newton_failed;
  bool fallback = false;
  int newton_iterations = 0;
  bool accepted() const noexcept { return status == SolveStatus::accepted; }
};

SweepRow make_row(const WaveSolution& s);

struct SweepResult {
  std::vector<SweepRow> rows;             // ascending in mu
  std::vector<WaveSolution> solutions;    // same order as rows
  std::size_t failures = 0;
  bool valid = false;                     // at most half of the rungs failed
};

/// Runs the ladder (strictly decreasing) by continuation in mu from a cold
/// solve at its first rung. Rungs more than a factor 4 apart, and rungs after
/// a failure with no accepted predecessor in reach, are solved cold.
SweepResult sweep_mu(const SolveConfig& base, std::span<const double> ladder);

/// mu_max 10^{-k/2} ... half-decade ladder from hi down to lo inclusive.
std::vector<double> half_decade_ladder(double hi, double lo);

enum class Quantity { speed_excess, sup_norm, l2_norm, hs_norm };
const char* to_string(Quantity q);

struct ExponentFit {
  std::string quantity;
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  std::size_t points = 0;
};

/// Least squares fit of log(value) against log(mu) over positive entries.
/// Throws ValidationError with fewer than 5 usable points or less than 1.5 decades.
ExponentFit fit_power_law(std::string name, std::span<const double> mu, std::span<const double> value);
/// Accepted rows only; the speed column is nu - m0.
ExponentFit fit_exponent(std::span<const SweepRow> rows, Quantity quantity, double m0);

/// (1/2 pi) integral over a period of (sqrt(2/3)(1 + sin x))^{2+q}; DomainError for q < 0.
double jensen_gamma(double q);

struct EnergyGainReport {
  std::vector<double> mu;
  std::vector<double> gain;            // (-E - m0 mu) / mu^{1 + q alpha}
  std::vector<double> periodic_margin;  // -E/mu - m0 - C (2 mu / P)^{q/2}, C = 2|gamma|/(2+q)
  double gain_min = 0.0;
  double gain_max = 0.0;
  bool bounded_away = false;   // every gain > 0 and max/min <= 3
  bool periodic_bound = false;  // every periodic margin > 0
  std::string note;
};
/// Periodic-bound margin for a single energy value.
double periodic_bound_margin(double energy, double mu, double period, const NonlinearitySpec& nl, double m0);
EnergyGainReport energy_gain_check(const SweepResult& sweep, const SymbolSpec& sym, const NonlinearitySpec& nl);

/// sign(gamma) a sech^{2/q}(b x), the even solitary solution of
///   -c phi + (|d|/2) phi'' + n_q(phi) = 0.
struct GkdvProfile {
  double speed_excess = 0.0;  // c = nu - m0
  double dispersion = 0.0;    // |d| / 2
  double q = 1.0;
  double gamma = 1.0;
  double a = 0.0;
  double b = 0.0;
  double operator()(double x) const;
  double second_derivative(double x) const;
};
/// nullopt unless c > 0, d < 0 and q > 0.
std::optional<GkdvProfile> make_gkdv_profile(double speed_excess, double d, double gamma, double q);
/// max |ODE residual| / (c max|phi|) at the given points, using the exact phi''.
double gkdv_ode_residual(const GkdvProfile& phi, const NonlinearitySpec& nl, std::span<const double> xs);

struct GkdvComparison {
  bool applicable = false;
  std::string note;
  double distance = 0.0;      // |u - phi|_{L^2} / |phi|_{L^2}
  double ode_residual = 0.0;  // on the solution grid refined 8x
  GkdvProfile profile;
};
GkdvComparison gkdv_profile_compare(const WaveSolution& solution, const SymbolSpec& sym, const NonlinearitySpec& nl);

enum class SignVerdict { elevation, depression, mixed, not_applicable };
const char* to_string(SignVerdict v);

/// Sign classification of a profile against +-tol |u|_inf.
SignVerdict profile_sign(const RealField& u, double tol);

enum class KernelSign { nonnegative, sign_changing, inconclusive };
/// From kernel_sample: min K / max K >= -tol is nonnegative, below -1e-2 sign changing.
KernelSign kernel_sign(const KernelSample& ks, double tol = 1e-6);
KernelSign kernel_sign(const SymbolSpec& sym, double tol = 1e-6);

/// profile_sign behind the hypotheses of the sign theorem: nu > m0 and a
/// nonnegative kernel; otherwise not_applicable.
SignVerdict sign_check(const WaveSolution& solution, const SymbolSpec& sym, double tol = 1e-8);

/// max |u| over |x| > P/4 relative to |u|_inf.
double tail_ratio(const RealField& u);

struct SolitaryRung {
  double period = 0.0;
  double nu = 0.0;
  double energy = 0.0;
  double tail = 0.0;
  bool accepted = false;
};
struct SolitaryLimitReport {
  std::vector<SolitaryRung> rungs;
  std::vector<double> nu_differences;      // |nu_P - nu_next| / nu_P
  std::vector<double> energy_differences;  // |E_P - E_next| / |E_P|
  bool decreasing = false;
  bool passed = false;  // all accepted, decreasing, last differences < 1e-2
};
/// Runs the config on each period of the ladder at the config's N/P density.
SolitaryLimitReport solitary_limit_check(const SolveConfig& config, std::span<const double> periods);

enum class ProbeVerdict { consistent_with_nonexistence, branch_persists, inconclusive };
const char* to_string(ProbeVerdict v);

struct ProbeRung {
  double mu = 0.0;
  SolveStatus status = SolveStatus::newton_failed;
  double speed_excess = 0.0;
  double sup_norm = 0.0;
  double tail = 0.0;
  bool persisting = false;  // accepted, supercritical and localised
  bool vanishing = false;   // trivial, failed, subcritical or delocalised
};
struct ProbeReport {
  int expansion_order = 1;
  double q = 0.0;
  bool long_wave_defined = false;  // q < 4l
  std::string fit_note;
  std::optional<ExponentFit> amplitude_fit;
  std::vector<ProbeRung> rungs;
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
};
/// Heuristic: keyed on the two smallest-mu rungs of the config's ladder.
ProbeReport nonexistence_probe(const SolveConfig& config, std::span<const double> ladder);

}  // namespace wavelab
