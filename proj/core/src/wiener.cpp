#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavelab/symbols.hpp"

namespace wavelab {
namespace {

constexpr int kPerDecade = 40;

struct TailFit {
  double slope = 0.0;
  double drift = 0.0;  // |slope(last decade) - slope(previous decade)|
  bool valid = false;
};

double ls_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  const double n = static_cast<double>(hi - lo);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Fits log|f| against log<xi> over the last two decades below xi_max.
TailFit fit_tail(const std::function<double(double)>& f, double xi_max) {
  TailFit fit;
  const int n = 2 * kPerDecade + 1;
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    const double xi = xi_max * std::pow(10.0, -2.0 + static_cast<double>(i) / kPerDecade);
    const double v = std::abs(f(xi));
    if (!(v > 0.0) || !std::isfinite(v)) return fit;
    lx[i] = 0.5 * std::log1p(xi * xi);
    ly[i] = std::log(v);
  }
  const auto mid = static_cast<std::size_t>(kPerDecade);
  fit.slope = ls_slope(lx, ly, 0, n);
  fit.drift = std::abs(ls_slope(lx, ly, mid, n) - ls_slope(lx, ly, 0, mid + 1));
  fit.valid = true;
  return fit;
}

bool settled(const TailFit& f) { return f.valid && f.drift <= 0.1 * std::max(0.1, std::abs(f.slope)); }

Verdict threshold(double value, double bound, double tol, bool below) {
  const double margin = below ? bound - value : value - bound;
  if (margin > tol) return Verdict::pass;
  if (margin < -tol) return Verdict::fail;
  return Verdict::inconclusive;
}

std::string fmt(const char* label, double v) {
  std::ostringstream os;
  os << label << v;
  return os.str();
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool WienerReport::any_pass() const {
  return derivative_decay.verdict == Verdict::pass || integrability.verdict == Verdict::pass ||
         quasi_convexity.verdict == Verdict::pass;
}

double symbol_derivative(const SymbolSpec& sym, double xi) {
  const double h = std::max(1e-6, 1e-8 * std::abs(xi));
  return (sym(xi + h) - sym(xi - h)) / (2.0 * h);
}

WienerReport wiener_predicates(const SymbolSpec& sym, const WienerRange& range, double tol) {
  WienerReport report;
  const double lo = std::max(range.xi_min, 1e-12);
  const double hi = range.xi_max;
  const double m0 = std::abs(sym(0.0));

  // Every condition presumes m(xi) -> 0; test that on the sampled range first.
  bool decays = hi >= 100.0 * lo && std::abs(sym(hi)) <= 0.5 * m0;
  for (int i = 1; decays && i <= 2 * kPerDecade; ++i) {
    const double a = hi * std::pow(10.0, -2.0 + static_cast<double>(i - 1) / kPerDecade);
    const double b = hi * std::pow(10.0, -2.0 + static_cast<double>(i) / kPerDecade);
    if (std::abs(sym(b)) >= std::abs(sym(a))) decays = false;
  }
  if (!decays) {
    WienerCondition none{Verdict::fail, 0.0, "symbol does not decay on the sampled range"};
    report.derivative_decay = report.integrability = report.quasi_convexity = none;
    return report;
  }

  const TailFit fm = fit_tail(sym.function(), hi);
  const TailFit fd = fit_tail([&](double xi) { return symbol_derivative(sym, xi); }, hi);
  report.fitted_order = fm.slope;
  report.fitted_derivative_order = fd.slope;
  for (int i = 0; i <= 2 * kPerDecade; ++i) {
    const double xi = hi * std::pow(10.0, -2.0 + static_cast<double>(i) / kPerDecade);
    report.decay_constant = std::max(report.decay_constant, std::abs(sym(xi)) / std::pow(1.0 + xi * xi, 0.5 * fm.slope));
  }

  const bool exponents = settled(fm) && settled(fd);
  {
    WienerCondition& c = report.derivative_decay;
    c.value = fm.slope + fd.slope;
    c.verdict = exponents ? threshold(c.value, -1.0, tol, true) : Verdict::inconclusive;
    c.detail = exponents ? fmt("sigma + sigma' = ", c.value) : "tail exponents still drifting";
  }
  {
    WienerCondition& c = report.integrability;
    // Best admissible pair: 1/p1 -> min(1, |sigma|), 1/p2 -> min(1, |sigma'|).
    c.value = std::min(1.0, std::abs(fm.slope)) + std::min(1.0, std::abs(fd.slope));
    c.verdict = exponents ? threshold(c.value, 1.0, tol, false) : Verdict::inconclusive;
    c.detail = exponents ? fmt("sup(1/p1 + 1/p2) = ", c.value) : "tail exponents still drifting";
  }
  {
    // Riemann-Stieltjes sum of xi |dm'| on [0, lo] uniformly, then per decade up to hi.
    WienerCondition& c = report.quasi_convexity;
    auto dm = [&](double xi) { return symbol_derivative(sym, xi); };
    double total = 0.0;
    {
      const int n = 400;
      double prev = dm(0.0);
      for (int i = 1; i <= n; ++i) {
        const double a = lo * (i - 1) / n, b = lo * i / n;
        const double cur = dm(b);
        total += 0.5 * (a + b) * std::abs(cur - prev);
        prev = cur;
      }
    }
    std::vector<double> decade;
    const int decades = static_cast<int>(std::floor(std::log10(hi / lo) + 1e-9));
    double a = lo, prev = dm(lo);
    for (int d = 0; d < decades; ++d) {
      double inc = 0.0;
      for (int i = 1; i <= kPerDecade * 5; ++i) {
        const double b = lo * std::pow(10.0, d + static_cast<double>(i) / (kPerDecade * 5));
        const double cur = dm(b);
        inc += 0.5 * (a + b) * std::abs(cur - prev);
        prev = cur;
        a = b;
      }
      decade.push_back(inc);
      total += inc;
    }
    c.value = total;
    const std::size_t nd = decade.size();
    if (nd < 3) {
      c.verdict = Verdict::inconclusive;
      c.detail = "range too short";
    } else {
      const bool shrinking = decade[nd - 1] <= decade[nd - 2] && decade[nd - 2] <= decade[nd - 3];
      if (shrinking && decade[nd - 1] <= tol * total) {
        c.verdict = Verdict::pass;
      } else if (decade[nd - 1] > 1.05 * decade[nd - 2]) {
        c.verdict = Verdict::fail;
      } else {
        c.verdict = Verdict::inconclusive;
      }
      c.detail = fmt("integral xi |dm'| = ", total) + fmt(", last decade ", decade[nd - 1]);
    }
  }
  return report;
}

}  // namespace wavelab
