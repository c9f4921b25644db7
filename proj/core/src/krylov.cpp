#include "krylov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wavelab::detail {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

GmresResult gmres(const LinearMap& A, const LinearMap& preconditioner, std::span<const double> b,
                  std::span<double> x, const GmresOptions& opts) {
  const std::size_t n = b.size();
  const int m = opts.restart;
  GmresResult result;
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> V(static_cast<std::size_t>(m) + 1, std::vector<double>(n));
  std::vector<std::vector<double>> H(static_cast<std::size_t>(m) + 1, std::vector<double>(static_cast<std::size_t>(m), 0.0));
  std::vector<double> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m)), g(static_cast<std::size_t>(m) + 1);
  std::vector<double> r(n), z(n), w(n);

  for (int cycle = 0; cycle < opts.max_restarts; ++cycle) {
    A(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = std::sqrt(dot(r, r));
    result.relative_residual = beta / bnorm;
    if (result.relative_residual <= opts.rel_tol) {
      result.converged = true;
      return result;
    }
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int k = 0;
    for (; k < m; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      preconditioner(V[ku], z);
      A(z, w);
      // Modified Gram-Schmidt, one reorthogonalisation pass.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j <= ku; ++j) {
          const double h = dot(w, V[j]);
          H[j][ku] += h;
          for (std::size_t i = 0; i < n; ++i) w[i] -= h * V[j][i];
        }
      }
      const double hnext = std::sqrt(dot(w, w));
      H[ku + 1][ku] = hnext;
      if (hnext > 0.0)
        for (std::size_t i = 0; i < n; ++i) V[ku + 1][i] = w[i] / hnext;

      for (std::size_t j = 0; j < ku; ++j) {
        const double t = cs[j] * H[j][ku] + sn[j] * H[j + 1][ku];
        H[j + 1][ku] = -sn[j] * H[j][ku] + cs[j] * H[j + 1][ku];
        H[j][ku] = t;
      }
      const double denom = std::hypot(H[ku][ku], H[ku + 1][ku]);
      cs[ku] = denom > 0.0 ? H[ku][ku] / denom : 1.0;
      sn[ku] = denom > 0.0 ? H[ku + 1][ku] / denom : 0.0;
      H[ku][ku] = denom;
      H[ku + 1][ku] = 0.0;
      g[ku + 1] = -sn[ku] * g[ku];
      g[ku] = cs[ku] * g[ku];
      ++result.iterations;
      result.relative_residual = std::abs(g[ku + 1]) / bnorm;
      if (result.relative_residual <= opts.rel_tol || hnext == 0.0) {
        ++k;
        break;
      }
    }

    // Back substitution and update x += M^{-1} V y.
    std::vector<double> y(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
      const auto iu = static_cast<std::size_t>(i);
      double s = g[iu];
      for (int j = i + 1; j < k; ++j) s -= H[iu][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
      y[iu] = H[iu][iu] != 0.0 ? s / H[iu][iu] : 0.0;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) w[i] += y[static_cast<std::size_t>(j)] * V[static_cast<std::size_t>(j)][i];
    preconditioner(w, z);
    for (std::size_t i = 0; i < n; ++i) x[i] += z[i];
    for (auto& row : H) std::fill(row.begin(), row.end(), 0.0);

    if (result.relative_residual <= opts.rel_tol) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace wavelab::detail
