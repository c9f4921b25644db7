#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace wavelab {

enum class LeadingForm {
  absolute,  // gamma |x|^{1+q}
  signed_power,  // gamma x |x|^q, gamma > 0
};

struct CutoffSpec {
  bool enabled = false;
  double theta = 0.25;  // A_mu = scale * mu^theta, theta in (0, 1/2)
  double scale = 1.0;
};

/// Optional smooth remainder n_r with n_r(x) = o(|x|^{1+q}). The derivative is
/// taken by central differences when not supplied.
struct Remainder {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  explicit operator bool() const { return static_cast<bool>(value); }
};

/// n = n_q + n_r with the leading power term n_q fixed by (q, gamma, form).
class NonlinearitySpec {
 public:
  /// Throws ConfigError for q <= 0, gamma = 0, signed form with gamma < 0 or a
  /// cutoff exponent outside (0, 1/2).
  NonlinearitySpec(double q, double gamma, LeadingForm form = LeadingForm::absolute, CutoffSpec cutoff = {},
                   Remainder remainder = {});

  double q() const noexcept { return q_; }
  double gamma() const noexcept { return gamma_; }
  LeadingForm form() const noexcept { return form_; }
  const CutoffSpec& cutoff() const noexcept { return cutoff_; }
  bool has_remainder() const noexcept { return static_cast<bool>(remainder_); }
  const Remainder& remainder() const noexcept { return remainder_; }

  /// A_mu, infinite when the cutoff is disabled.
  double threshold(double mu) const;

  double leading(double x) const noexcept;
  double leading_derivative(double x) const noexcept;
  /// N_q(x) = x n_q(x) / (2 + q).
  double leading_primitive(double x) const noexcept;

  /// Uncut n, n' and N.
  double value(double x) const;
  double derivative(double x) const;
  double primitive(double x) const;

 private:
  double q_;
  double gamma_;
  LeadingForm form_;
  CutoffSpec cutoff_;
  Remainder remainder_;
};

/// |x|^p with 0 at the origin.
double abs_pow(double x, double p) noexcept;

/// The cut-off nonlinearity: n(x) on |x| <= A_mu, n(A_mu sign x) outside.
double n_eval(const NonlinearitySpec& spec, double x, double mu);
/// Primitive of n_eval vanishing at 0, continued linearly past +-A_mu.
double N_eval(const NonlinearitySpec& spec, double x, double mu);
/// Derivative of n_eval (0 on the plateau).
double n_prime(const NonlinearitySpec& spec, double x, double mu);

/// Pointwise application to a sample vector; out may alias in.
void apply_n(const NonlinearitySpec& spec, double mu, std::span<const double> in, std::span<double> out);
void apply_n_prime(const NonlinearitySpec& spec, double mu, std::span<const double> in, std::span<double> out);

struct RemainderCheck {
  std::vector<double> x;       // 2^{-1}, 2^{-2}, ...
  std::vector<double> ratios;  // |n_r(x)| / |x|^{1+q}
  bool passed = false;
};
/// Samples |n_r(x)|/|x|^{1+q} along x -> 0 (both signs); passes when the ratio
/// falls below 1e-2 of its initial size or vanishes identically.
RemainderCheck remainder_check(const NonlinearitySpec& spec, int levels = 30);

struct GrowthReport {
  std::vector<double> mu;
  std::vector<double> constants;  // sup_x |n~(x)| / (mu^{theta q} |x|) per level
  double bound = 0.0;             // largest constant seen
  double predicted_bound = std::numeric_limits<double>::quiet_NaN();  // |gamma| c_A^q without remainder
  bool passed = false;
};
/// The sample is augmented with +-A_mu. Throws ConfigError unless the cutoff is enabled.
GrowthReport growth_check(const NonlinearitySpec& spec, std::span<const double> mus, std::span<const double> sample);

}  // namespace wavelab
