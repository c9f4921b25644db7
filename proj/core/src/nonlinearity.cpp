#include "wavelab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wavelab/errors.hpp"

namespace wavelab {

double abs_pow(double x, double p) noexcept {
  if (x == 0.0) return 0.0;
  return std::exp(p * std::log(std::abs(x)));
}

NonlinearitySpec::NonlinearitySpec(double q, double gamma, LeadingForm form, CutoffSpec cutoff, Remainder remainder)
    : q_(q), gamma_(gamma), form_(form), cutoff_(cutoff), remainder_(std::move(remainder)) {
  if (!(q > 0.0) || !std::isfinite(q)) throw ConfigError("nonlinearity exponent q must be positive");
  if (gamma == 0.0 || !std::isfinite(gamma)) throw ConfigError("nonlinearity coefficient gamma must be nonzero");
  if (form == LeadingForm::signed_power && gamma < 0.0) throw ConfigError("signed form requires gamma > 0");
  if (cutoff.enabled) {
    if (!(cutoff.theta > 0.0 && cutoff.theta < 0.5)) throw ConfigError("cutoff exponent theta must lie in (0, 1/2)");
    if (!(cutoff.scale > 0.0)) throw ConfigError("cutoff scale must be positive");
  }
}

double NonlinearitySpec::threshold(double mu) const {
  if (!cutoff_.enabled) return std::numeric_limits<double>::infinity();
  if (!(mu > 0.0)) throw DomainError("cutoff threshold needs mu > 0");
  return cutoff_.scale * std::pow(mu, cutoff_.theta);
}

double NonlinearitySpec::leading(double x) const noexcept {
  const double p = abs_pow(x, 1.0 + q_);
  if (form_ == LeadingForm::absolute) return gamma_ * p;
  return x < 0.0 ? -gamma_ * p : gamma_ * p;
}

double NonlinearitySpec::leading_derivative(double x) const noexcept {
  const double p = (1.0 + q_) * gamma_ * abs_pow(x, q_);
  if (form_ == LeadingForm::signed_power) return p;
  return x < 0.0 ? -p : p;
}

double NonlinearitySpec::leading_primitive(double x) const noexcept { return x * leading(x) / (2.0 + q_); }

double NonlinearitySpec::value(double x) const {
  double v = leading(x);
  if (remainder_) v += remainder_.value(x);
  return v;
}

double NonlinearitySpec::derivative(double x) const {
  double v = leading_derivative(x);
  if (remainder_) {
    if (remainder_.derivative) {
      v += remainder_.derivative(x);
    } else {
      const double h = 1e-6 * std::max(1e-3, std::abs(x));
      v += (remainder_.value(x + h) - remainder_.value(x - h)) / (2.0 * h);
    }
  }
  return v;
}

double NonlinearitySpec::primitive(double x) const {
  double v = leading_primitive(x);
  if (remainder_ && x != 0.0) {
    using boost::math::quadrature::gauss_kronrod;
    v += gauss_kronrod<double, 21>::integrate(remainder_.value, 0.0, x, 15, 1e-13);
  }
  return v;
}

double n_eval(const NonlinearitySpec& spec, double x, double mu) {
  const double a = spec.threshold(mu);
  if (std::abs(x) <= a) return spec.value(x);
  return spec.value(std::copysign(a, x));
}

double N_eval(const NonlinearitySpec& spec, double x, double mu) {
  const double a = spec.threshold(mu);
  if (std::abs(x) <= a) return spec.primitive(x);
  const double edge = std::copysign(a, x);
  return spec.primitive(edge) + spec.value(edge) * (x - edge);
}

double n_prime(const NonlinearitySpec& spec, double x, double mu) {
  if (std::abs(x) > spec.threshold(mu)) return 0.0;
  return spec.derivative(x);
}

void apply_n(const NonlinearitySpec& spec, double mu, std::span<const double> in, std::span<double> out) {
  const double a = spec.threshold(mu);
  for (std::size_t j = 0; j < in.size(); ++j) {
    const double x = in[j];
    out[j] = spec.value(std::abs(x) <= a ? x : std::copysign(a, x));
  }
}

void apply_n_prime(const NonlinearitySpec& spec, double mu, std::span<const double> in, std::span<double> out) {
  const double a = spec.threshold(mu);
  for (std::size_t j = 0; j < in.size(); ++j) {
    const double x = in[j];
    out[j] = std::abs(x) <= a ? spec.derivative(x) : 0.0;
  }
}

RemainderCheck remainder_check(const NonlinearitySpec& spec, int levels) {
  RemainderCheck out;
  if (!spec.has_remainder()) {
    out.passed = true;
    return out;
  }
  for (int i = 1; i <= levels; ++i) {
    const double x = std::ldexp(1.0, -i);
    const double r = std::max(std::abs(spec.remainder().value(x)), std::abs(spec.remainder().value(-x)));
    out.x.push_back(x);
    out.ratios.push_back(r / abs_pow(x, 1.0 + spec.q()));
  }
  const double first = *std::max_element(out.ratios.begin(), out.ratios.end());
  out.passed = first == 0.0 || out.ratios.back() <= 1e-2 * first;
  return out;
}

GrowthReport growth_check(const NonlinearitySpec& spec, std::span<const double> mus, std::span<const double> sample) {
  if (!spec.cutoff().enabled) throw ConfigError("growth check needs the cutoff enabled");
  GrowthReport out;
  for (double mu : mus) {
    const double scale = std::pow(mu, spec.cutoff().theta * spec.q());
    double sup = 0.0;
    auto probe = [&](double x) {
      if (x != 0.0) sup = std::max(sup, std::abs(n_eval(spec, x, mu)) / (scale * std::abs(x)));
    };
    for (double x : sample) probe(x);
    // |n_q(x)|/|x| peaks at the plateau edge, so the sample alone can miss it
    probe(spec.threshold(mu));
    probe(-spec.threshold(mu));
    out.mu.push_back(mu);
    out.constants.push_back(sup);
    out.bound = std::max(out.bound, sup);
  }
  if (!spec.has_remainder()) {
    out.predicted_bound = std::abs(spec.gamma()) * std::pow(spec.cutoff().scale, spec.q());
    out.passed = out.bound <= out.predicted_bound * (1.0 + 1e-12);
  } else {
    out.passed = std::isfinite(out.bound);
  }
  return out;
}

}  // namespace wavelab
