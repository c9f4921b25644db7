#pragma once
// Reference implementations used as oracles by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "wavelab/spectral.hpp"

namespace wavelab::test {

// coeff(k) = P^{-1/2} sum_j u_j exp(-2 pi i k x_j / P) dx, by direct summation.
inline std::complex<double> direct_coeff(const RealField& u, int k) {
  const auto& g = u.grid();
  std::complex<double> c = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double arg = -2.0 * std::numbers::pi * k * g.point(j) / g.period();
    c += u[j] * std::polar(1.0, arg);
  }
  return c * g.spacing() / std::sqrt(g.period());
}

// Applies a real even multiplier by direct summation over all |k| <= N/2.
inline std::vector<double> direct_multiply(const RealField& u, const auto& weight) {
  const auto& g = u.grid();
  const int n = static_cast<int>(u.size());
  std::vector<std::complex<double>> c(n);
  for (int k = -n / 2; k < n / 2; ++k) c[k + n / 2] = direct_coeff(u, k) * weight(k);
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (int k = -n / 2; k < n / 2; ++k) {
      // Nyquist mode treated as cos, matching a real interpolant
      const double arg = 2.0 * std::numbers::pi * k * g.point(j) / g.period();
      s += c[k + n / 2] * std::polar(1.0, arg);
    }
    out[j] = s.real() / std::sqrt(g.period());
  }
  return out;
}

// Random smooth field: trigonometric polynomial of degree kmax with decaying coefficients.
inline RealField smooth_random(const PeriodicGrid& g, std::mt19937_64& rng, int kmax, double scale = 1.0,
                               bool even = false) {
  std::normal_distribution<double> nd;
  std::vector<double> a(kmax + 1), b(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    const double d = scale / (1.0 + k * k);
    a[k] = d * nd(rng);
    b[k] = even ? 0.0 : d * nd(rng);
  }
  return RealField::from_function(g, [&](double x) {
    double s = 0.0;
    for (int k = 0; k <= kmax; ++k) {
      const double w = 2.0 * std::numbers::pi * k * x / g.period();
      s += a[k] * std::cos(w) + b[k] * std::sin(w);
    }
    return s;
  });
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

inline double sup(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace wavelab::test
