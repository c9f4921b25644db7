#pragma once

#include <optional>
#include <span>

#include "wavelab/nonlinearity.hpp"
#include "wavelab/spectral.hpp"
#include "wavelab/symbols.hpp"

namespace wavelab {

/// rho(t) = exp(-1/(tau - 1)) / (4 - tau) with tau = t / R^2; zero for t <= R^2,
/// pole at t = (2R)^2. t is the squared H^s_P norm.
class PenalizerSpec {
 public:
  /// Throws ConfigError unless radius > 0 and s >= 0.
  explicit PenalizerSpec(double radius, double s = 1.0);
  /// Default radius 10 sqrt(2 mu_max).
  static PenalizerSpec for_levels(double mu_max, double s = 1.0);

  double radius() const noexcept { return radius_; }
  double s() const noexcept { return s_; }
  double pole() const noexcept { return 4.0 * radius_ * radius_; }
  bool active(double t) const noexcept { return t > radius_ * radius_; }

  /// Both throw DomainError for t >= (2R)^2.
  double value(double t) const;
  double derivative(double t) const;

 private:
  double radius_;
  double s_;
};

/// sup over sampled t in (R^2, (2R)^2) of rho'(t) / (rho(t)^a + rho(t)^b).
double penalizer_growth_constant(const PenalizerSpec& pen, double a, double b, int samples = 2000);

struct EnergyBreakdown {
  double L_part = 0.0;
  double N_part = 0.0;
  double E = 0.0;
  double Q = 0.0;
  double penalty = 0.0;
  double hsp_norm_sq = 0.0;
  double penalized() const noexcept { return E + penalty; }
};

/// Discretised energy landscape on one grid at a fixed level mu.
///
/// Operates on raw sample spans so the solver can reuse buffers.
class WaveProblem {
 public:
  WaveProblem(PeriodicGrid grid, SymbolSpec symbol, NonlinearitySpec nonlinearity, double mu,
              std::optional<PenalizerSpec> penalizer = std::nullopt, double sobolev_index = 1.0);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  const SymbolSpec& symbol() const noexcept { return symbol_; }
  const NonlinearitySpec& nonlinearity() const noexcept { return nl_; }
  double level() const noexcept { return mu_; }
  const std::optional<PenalizerSpec>& penalizer() const noexcept { return pen_; }
  double sobolev_index() const noexcept { return pen_ ? pen_->s() : s_; }
  const DiagonalOperator& dispersion() const noexcept { return L_; }
  const DiagonalOperator& sobolev() const noexcept { return S_; }

  double dot(std::span<const double> a, std::span<const double> b) const;
  double charge(std::span<const double> u) const { return 0.5 * dot(u, u); }
  double hsp_norm_sq(std::span<const double> u) const { return S_.quadratic_form(u); }

  EnergyBreakdown energy(std::span<const double> u) const;
  /// L^2 gradient of E + rho; throws DomainError at the penalizer pole.
  void gradient(std::span<const double> u, std::span<double> out) const;
  /// [<Lu + n(u), u> - 2 rho' |u|^2_{H^s}] / (2 mu).
  double multiplier(std::span<const double> u) const;
  /// Lu - nu u + n(u).
  void residual(std::span<const double> u, double nu, std::span<double> out) const;

 private:
  PeriodicGrid grid_;
  SymbolSpec symbol_;
  NonlinearitySpec nl_;
  double mu_;
  std::optional<PenalizerSpec> pen_;
  double s_;
  DiagonalOperator L_;
  DiagonalOperator S_;
};

EnergyBreakdown energy(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu,
                       const std::optional<PenalizerSpec>& pen = std::nullopt);
RealField gradient(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu,
                   const std::optional<PenalizerSpec>& pen = std::nullopt);
/// Throws DomainError for mu <= 0 or when Q(u) differs from mu by more than 1e-10 relative.
double multiplier(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu,
                  const std::optional<PenalizerSpec>& pen = std::nullopt);

struct IdentityReport {
  double lhs = 0.0;  // <Lu + n(u), u>
  double rhs = 0.0;  // -(2+q) E + q L - integral[(2+q) N(u) - u n(u)]
  double remainder_term = 0.0;
  double gap = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|), 0 when both vanish
};
IdentityReport el_identity_check(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu);

}  // namespace wavelab
