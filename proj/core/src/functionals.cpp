#include "wavelab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wavelab/errors.hpp"

namespace wavelab {

PenalizerSpec::PenalizerSpec(double radius, double s) : radius_(radius), s_(s) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("penalizer radius must be positive");
  if (!(s >= 0.0)) throw ConfigError("penalizer Sobolev index must be nonnegative");
}

PenalizerSpec PenalizerSpec::for_levels(double mu_max, double s) {
  if (!(mu_max > 0.0)) throw DomainError("penalizer level must be positive");
  return PenalizerSpec(10.0 * std::sqrt(2.0 * mu_max), s);
}

double PenalizerSpec::value(double t) const {
  if (t >= pole()) throw DomainError("H^s norm reached the penalizer pole");
  const double tau = t / (radius_ * radius_);
  if (tau <= 1.0) return 0.0;
  return std::exp(-1.0 / (tau - 1.0)) / (4.0 - tau);
}

double PenalizerSpec::derivative(double t) const {
  const double rho = value(t);
  if (rho == 0.0) return 0.0;
  const double tau = t / (radius_ * radius_);
  const double a = tau - 1.0;
  return rho * (1.0 / (a * a) + 1.0 / (4.0 - tau)) / (radius_ * radius_);
}

double penalizer_growth_constant(const PenalizerSpec& pen, double a, double b, int samples) {
  const double r2 = pen.radius() * pen.radius();
  double sup = 0.0;
  for (int i = 1; i < samples; ++i) {
    const double t = r2 * (1.0 + 3.0 * static_cast<double>(i) / samples);
    const double rho = pen.value(t);
    if (rho <= 0.0) continue;
    sup = std::max(sup, pen.derivative(t) / (std::pow(rho, a) + std::pow(rho, b)));
  }
  return sup;
}

WaveProblem::WaveProblem(PeriodicGrid grid, SymbolSpec symbol, NonlinearitySpec nonlinearity, double mu,
                         std::optional<PenalizerSpec> penalizer, double sobolev_index)
    : grid_(grid),
      symbol_(std::move(symbol)),
      nl_(std::move(nonlinearity)),
      mu_(mu),
      pen_(std::move(penalizer)),
      s_(sobolev_index),
      L_(DiagonalOperator::from_symbol(grid_, symbol_.function())),
      S_(DiagonalOperator::sobolev(grid_, pen_ ? pen_->s() : sobolev_index)) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("constraint level mu must be positive");
}

double WaveProblem::dot(std::span<const double> a, std::span<const double> b) const {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s * grid_.spacing();
}

EnergyBreakdown WaveProblem::energy(std::span<const double> u) const {
  EnergyBreakdown e;
  e.L_part = -0.5 * L_.quadratic_form(u);
  double n_int = 0.0;
  for (double x : u) n_int += N_eval(nl_, x, mu_);
  e.N_part = -n_int * grid_.spacing();
  e.E = e.L_part + e.N_part;
  e.Q = charge(u);
  e.hsp_norm_sq = hsp_norm_sq(u);
  e.penalty = pen_ ? pen_->value(e.hsp_norm_sq) : 0.0;
  return e;
}

void WaveProblem::gradient(std::span<const double> u, std::span<double> out) const {
  const std::size_t n = u.size();
  thread_local std::vector<double> nu;
  nu.resize(n);
  apply_n(nl_, mu_, u, nu);
  double rho_prime = 0.0;
  if (pen_) rho_prime = pen_->derivative(hsp_norm_sq(u));
  if (rho_prime != 0.0) {
    thread_local std::vector<double> su;
    su.resize(n);
    S_.apply(u, su);
    L_.apply(u, out);
    for (std::size_t j = 0; j < n; ++j) out[j] = -out[j] - nu[j] + 2.0 * rho_prime * su[j];
  } else {
    L_.apply(u, out);
    for (std::size_t j = 0; j < n; ++j) out[j] = -out[j] - nu[j];
  }
}

double WaveProblem::multiplier(std::span<const double> u) const {
  const double q = charge(u);
  if (std::abs(q - mu_) > 1e-10 * mu_) throw DomainError("multiplier needs Q(u) = mu");
  thread_local std::vector<double> w;
  w.resize(u.size());
  apply_n(nl_, mu_, u, w);
  double pair = L_.quadratic_form(u) + dot(w, u);
  if (pen_) {
    const double t = hsp_norm_sq(u);
    pair -= 2.0 * pen_->derivative(t) * t;
  }
  return pair / (2.0 * mu_);
}

void WaveProblem::residual(std::span<const double> u, double nu, std::span<double> out) const {
  thread_local std::vector<double> w;
  w.resize(u.size());
  apply_n(nl_, mu_, u, w);
  L_.apply(u, out);
  for (std::size_t j = 0; j < u.size(); ++j) out[j] += w[j] - nu * u[j];
}

EnergyBreakdown energy(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu,
                       const std::optional<PenalizerSpec>& pen) {
  return WaveProblem(u.grid(), sym, nl, mu, pen).energy(u.values());
}

RealField gradient(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu,
                   const std::optional<PenalizerSpec>& pen) {
  std::vector<double> g(u.size());
  WaveProblem(u.grid(), sym, nl, mu, pen).gradient(u.values(), g);
  return RealField(u.grid(), std::move(g));
}

double multiplier(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu,
                  const std::optional<PenalizerSpec>& pen) {
  return WaveProblem(u.grid(), sym, nl, mu, pen).multiplier(u.values());
}

IdentityReport el_identity_check(const RealField& u, const SymbolSpec& sym, const NonlinearitySpec& nl, double mu) {
  const WaveProblem prob(u.grid(), sym, nl, mu);
  const auto v = u.values();
  const double dx = u.grid().spacing();
  const double q = nl.q();
  const EnergyBreakdown e = prob.energy(v);

  double un = 0.0, rem = 0.0;
  for (double x : v) {
    const double nx = n_eval(nl, x, mu);
    un += x * nx;
    rem += (2.0 + q) * N_eval(nl, x, mu) - x * nx;
  }
  IdentityReport r;
  r.lhs = prob.dispersion().quadratic_form(v) + un * dx;
  r.remainder_term = rem * dx;
  r.rhs = -(2.0 + q) * e.E + q * e.L_part - r.remainder_term;
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.gap = scale > 0.0 ? std::abs(r.lhs - r.rhs) / scale : 0.0;
  return r;
}

}  // namespace wavelab
