#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wavelab/spectral.hpp"

namespace wavelab {

/// An even dispersion symbol m together with the data the theory attaches to it:
/// its decay order sigma < 0, expansion order l, m(0) and m^{(2l)}(0).
class SymbolSpec {
 public:
  SymbolSpec(std::string name, std::function<double(double)> eval, double order,
             int expansion_order, double value_at_zero, double leading_derivative);

  const std::string& name() const noexcept { return name_; }
  double operator()(double xi) const { return eval_(xi); }
  const std::function<double(double)>& function() const noexcept { return eval_; }

  double order() const noexcept { return order_; }
  int expansion_order() const noexcept { return expansion_order_; }
  double value_at_zero() const noexcept { return value_at_zero_; }
  /// m^{(2l)}(0); NaN when the symbol has no such expansion.
  double leading_derivative() const noexcept { return leading_derivative_; }
  /// m^{(2l)}(0) / (2l)!
  double leading_coefficient() const;

 private:
  std::string name_;
  std::function<double(double)> eval_;
  double order_;
  int expansion_order_;
  double value_at_zero_;
  double leading_derivative_;
};

/// sqrt(tanh(xi)/xi), the exact linear gravity-wave dispersion relation.
SymbolSpec whitham_symbol();
/// <xi>^sigma = (1 + xi^2)^{sigma/2}; throws ConfigError unless sigma < 0.
SymbolSpec fractional_symbol(double sigma);
/// (1 + log(1 + |xi|))^{-alpha}: weak (logarithmic) decay, not C^2 at 0.
SymbolSpec log_symbol(double alpha);

/// Symbol interpolated from sampled (xi, m) pairs.
///
/// Nodes must be strictly increasing and include xi = 0. Nonnegative nodes
/// define the symbol (mirrored by evenness); negative nodes, if present, are
/// checked against the mirror and a ValidationError is thrown on mismatch.
/// Past the last node the tail is continued by the power law through the last
/// two nodes (or held constant when that is not a decaying power law).
SymbolSpec table_symbol(std::string name, std::vector<double> xi, std::vector<double> m);

/// Two-column whitespace separated text file (xi m), '#' comments allowed.
SymbolSpec load_symbol_table(const std::filesystem::path& path);

struct SymbolParams {
  double order = -0.5;          // fractional
  double log_exponent = 1.0;    // log
  std::filesystem::path table;  // table
};

/// name in {whitham, fractional, table, log}; throws ConfigError otherwise.
SymbolSpec builtin_symbol(const std::string& name, const SymbolParams& params = {});

/// Fourier multiplier action (Lu)^(k) = m(2 pi k / P) u^(k).
RealField apply_multiplier(const RealField& u, const SymbolSpec& sym);

/// Numeric check of the structural assumptions on a symbol over the lattice
/// xi_k = 2 pi k / P, |k| <= N/2, of a grid.
struct SymbolCheck {
  double evenness_error = 0.0;   // max |m(xi) - m(-xi)|
  double decay_constant = 0.0;   // sup |m(xi)| / <xi>^sigma
  bool unique_maximum = false;   // m(xi) < m(0) for sampled xi != 0
  double expansion_order_observed = 0.0;  // Richardson order of m - m0 - c xi^{2l}
  bool expansion_ok = false;
  bool passed() const {
    return evenness_error <= 1e-12 && unique_maximum && expansion_ok && std::isfinite(decay_constant);
  }
};
SymbolCheck check_symbol(const SymbolSpec& sym, const PeriodicGrid& grid);

// ---------------------------------------------------------------------------
// Convolution kernel K = F^{-1}(m) on the line.

struct KernelSample {
  double half_width = 0.0;  // X
  std::size_t count = 0;    // M
  double spacing = 0.0;     // 2X / M
  double max_frequency = 0.0;  // pi M / (2X)
  std::vector<double> x;       // -X + j * spacing
  std::vector<double> values;  // K(x_j)
  double l1_estimate = 0.0;    // spacing * sum |K|
  double tail_estimate = 0.0;  // same over X/2 <= |x| <= X
  bool underresolved = false;  // |m| not yet small at the frequency cutoff

  double min_value() const;
  double max_value() const;
};

/// Unitary inverse transform of m sampled on the dual lattice pi k / X,
/// |k| <= M/2. Throws ConfigError unless X > 0 and M is a power of two >= 8.
KernelSample kernel_sample(const SymbolSpec& sym, double half_width, std::size_t count);

/// Samples a kernel given in closed form on the same point layout as kernel_sample.
KernelSample kernel_from_function(const std::function<double(double)>& kernel, double half_width,
                                  std::size_t count);

struct PeriodizationReport {
  double max_relative_deviation = 0.0;
  int worst_frequency = 0;
  int max_frequency = 0;  // N/4
  int images = 0;         // number of periods folded on each side
  std::vector<Complex> coefficients;  // folded-kernel coefficients, k = 0..N/4
};

/// Folds K into K_P = sum_j K(. + jP) and compares its Fourier coefficients
/// with sqrt(2 pi / P) m(2 pi k / P) for |k| <= N/4. Throws ConfigError when
/// the sample does not cover X >= 3P or P is not a multiple of the sample spacing.
PeriodizationReport periodization_check(const SymbolSpec& sym, const PeriodicGrid& grid,
                                        const KernelSample& ks);

// ---------------------------------------------------------------------------
// Sufficient conditions for membership in the Wiener class W0.

enum class Verdict { pass, fail, inconclusive };
const char* to_string(Verdict v);

struct WienerCondition {
  Verdict verdict = Verdict::inconclusive;
  double value = 0.0;  // the quantity compared against its threshold
  std::string detail;
};

struct WienerReport {
  double fitted_order = 0.0;             // sigma from the log|m| tail fit
  double fitted_derivative_order = 0.0;  // sigma' from the log|m'| tail fit
  double decay_constant = 0.0;
  WienerCondition derivative_decay;  // sigma + sigma' < -1
  WienerCondition integrability;     // m in L^p1, m' in L^p2, 1/p1 + 1/p2 > 1
  WienerCondition quasi_convexity;   // integral of xi |dm'| finite
  bool any_pass() const;
};

struct WienerRange {
  double xi_min = 1.0;
  double xi_max = 1e6;
};

WienerReport wiener_predicates(const SymbolSpec& sym, const WienerRange& range = {}, double tol = 0.05);

/// Centered difference with step max(1e-6, 1e-8 |xi|).
double symbol_derivative(const SymbolSpec& sym, double xi);

}  // namespace wavelab
