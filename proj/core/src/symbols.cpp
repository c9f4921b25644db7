#include "wavelab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include <boost/math/interpolators/makima.hpp>

#include "wavelab/errors.hpp"

namespace wavelab {

SymbolSpec::SymbolSpec(std::string name, std::function<double(double)> eval, double order,
                       int expansion_order, double value_at_zero, double leading_derivative)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      order_(order),
      expansion_order_(expansion_order),
      value_at_zero_(value_at_zero),
      leading_derivative_(leading_derivative) {
  if (!eval_) throw ConfigError("symbol '" + name_ + "' has no evaluator");
  if (expansion_order_ < 1) throw ConfigError("symbol expansion order must be a positive integer");
}

double SymbolSpec::leading_coefficient() const {
  return leading_derivative_ / std::tgamma(2.0 * expansion_order_ + 1.0);
}

SymbolSpec whitham_symbol() {
  auto m = [](double xi) {
    const double a = std::abs(xi);
    if (a < 1e-4) {
      const double a2 = a * a;
      return 1.0 - a2 / 6.0 + (19.0 / 360.0) * a2 * a2;
    }
    return std::sqrt(std::tanh(a) / a);
  };
  return SymbolSpec("whitham", m, -0.5, 1, 1.0, -1.0 / 3.0);
}

SymbolSpec fractional_symbol(double sigma) {
  if (!(sigma < 0.0) || !std::isfinite(sigma))
    throw ConfigError("fractional symbol needs order < 0, got " + std::to_string(sigma));
  auto m = [sigma](double xi) { return std::pow(1.0 + xi * xi, 0.5 * sigma); };
  std::ostringstream name;
  name << "fractional(" << sigma << ")";
  return SymbolSpec(name.str(), m, sigma, 1, 1.0, sigma);
}

SymbolSpec log_symbol(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ConfigError("log symbol needs exponent > 0");
  auto m = [alpha](double xi) { return std::pow(1.0 + std::log1p(std::abs(xi)), -alpha); };
  std::ostringstream name;
  name << "log(" << alpha << ")";
  // No algebraic decay and a corner at the origin.
  return SymbolSpec(name.str(), m, 0.0, 1, 1.0, std::numeric_limits<double>::quiet_NaN());
}

SymbolSpec table_symbol(std::string name, std::vector<double> xi, std::vector<double> m) {
  if (xi.size() != m.size()) throw ConfigError("symbol table: column length mismatch");
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!std::isfinite(xi[i]) || !std::isfinite(m[i])) throw ValidationError("symbol table: non-finite entry");
    if (i > 0 && !(xi[i] > xi[i - 1])) throw ValidationError("symbol table: nodes must be strictly increasing");
  }
  const auto zero = std::find(xi.begin(), xi.end(), 0.0);
  if (zero == xi.end()) throw ValidationError("symbol table: must contain xi = 0");
  const auto first = static_cast<std::size_t>(zero - xi.begin());
  std::vector<double> pos_x(xi.begin() + static_cast<std::ptrdiff_t>(first), xi.end());
  std::vector<double> pos_m(m.begin() + static_cast<std::ptrdiff_t>(first), m.end());
  if (pos_x.size() < 3) throw ValidationError("symbol table: need at least 3 nodes with xi >= 0");

  // Mirror into a symmetric node set so the interpolant is even by construction.
  std::vector<double> nx, nm;
  for (std::size_t i = pos_x.size() - 1; i >= 1; --i) {
    nx.push_back(-pos_x[i]);
    nm.push_back(pos_m[i]);
  }
  nx.insert(nx.end(), pos_x.begin(), pos_x.end());
  nm.insert(nm.end(), pos_m.begin(), pos_m.end());
  const double x_last = pos_x.back();
  const double m_last = pos_m.back();
  const double x_prev = pos_x[pos_x.size() - 2];
  const double m_prev = pos_m[pos_m.size() - 2];

  using Spline = boost::math::interpolators::makima<std::vector<double>>;
  auto spline = std::make_shared<const Spline>(std::move(nx), std::move(nm));

  double tail_power = 0.0;
  if (m_last != 0.0 && m_prev != 0.0 && (m_last > 0) == (m_prev > 0) && x_prev > 0.0 &&
      std::abs(m_last) < std::abs(m_prev)) {
    tail_power = std::log(m_last / m_prev) / std::log(x_last / x_prev);
  }

  auto eval = [spline, x_last, m_last, tail_power](double x) {
    const double a = std::abs(x);
    if (a <= x_last) return (*spline)(a);
    return tail_power < 0.0 ? m_last * std::pow(a / x_last, tail_power) : m_last;
  };

  const double scale = std::max(1.0, *std::max_element(pos_m.begin(), pos_m.end(),
                                                       [](double a, double b) { return std::abs(a) < std::abs(b); }));
  for (std::size_t i = 0; i < first; ++i) {
    if (std::abs(eval(xi[i]) - m[i]) > 1e-12 * std::abs(scale))
      throw ValidationError("symbol table '" + name + "' is not even at xi = " + std::to_string(xi[i]));
  }

  const double m0 = pos_m.front();
  const double d = 2.0 * (pos_m[1] - m0) / (pos_x[1] * pos_x[1]);
  return SymbolSpec(std::move(name), eval, tail_power, 1, m0, d);
}

SymbolSpec load_symbol_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open symbol table " + path.string());
  std::vector<double> xi, m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double a = 0.0, b = 0.0;
    if (!(row >> a)) continue;
    std::string extra;
    if (!(row >> b) || (row >> extra))
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    xi.push_back(a);
    m.push_back(b);
  }
  return table_symbol(path.stem().string(), std::move(xi), std::move(m));
}

SymbolSpec builtin_symbol(const std::string& name, const SymbolParams& params) {
  if (name == "whitham") return whitham_symbol();
  if (name == "fractional") return fractional_symbol(params.order);
  if (name == "log") return log_symbol(params.log_exponent);
  if (name == "table") {
    if (params.table.empty()) throw ConfigError("table symbol needs a table path");
    return load_symbol_table(params.table);
  }
  throw ConfigError("unknown symbol '" + name + "'");
}

RealField apply_multiplier(const RealField& u, const SymbolSpec& sym) {
  return DiagonalOperator::from_symbol(u.grid(), sym.function()).apply(u);
}

SymbolCheck check_symbol(const SymbolSpec& sym, const PeriodicGrid& grid) {
  SymbolCheck out;
  const int half = static_cast<int>(grid.size() / 2);
  const double m0 = sym(0.0);
  out.unique_maximum = m0 > 0.0 && std::abs(m0 - sym.value_at_zero()) <= 1e-12 * std::abs(m0);
  for (int k = 0; k <= half; ++k) {
    const double xi = grid.wavenumber(k);
    const double v = sym(xi);
    out.evenness_error = std::max(out.evenness_error, std::abs(v - sym(-xi)));
    out.decay_constant = std::max(out.decay_constant, std::abs(v) / std::pow(1.0 + xi * xi, 0.5 * sym.order()));
    if (k > 0 && !(v < m0)) out.unique_maximum = false;
  }

  const double c = sym.leading_coefficient();
  const int p = 2 * sym.expansion_order();
  if (std::isfinite(c) && c < 0.0) {
    auto err = [&](double h) { return std::abs(sym(h) - m0 - c * std::pow(h, p)); };
    const double h = 0.1;
    const double e1 = err(h), e2 = err(h / 2);
    if (e2 < 1e-14 * std::pow(h / 2, p)) {
      out.expansion_order_observed = std::numeric_limits<double>::infinity();
    } else {
      out.expansion_order_observed = std::log2(e1 / e2);
    }
    out.expansion_ok = out.expansion_order_observed >= p + 1.5;
  }
  return out;
}

}  // namespace wavelab
