#pragma once

#include <functional>
#include <span>

namespace wavelab::detail {

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

struct GmresOptions {
  int restart = 80;
  int max_restarts = 20;
  double rel_tol = 1e-12;
};

struct GmresResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Restarted GMRES for A x = b with right preconditioner M^{-1}; x holds the
/// initial guess on entry.
GmresResult gmres(const LinearMap& A, const LinearMap& preconditioner, std::span<const double> b,
                  std::span<double> x, const GmresOptions& opts);

}  // namespace wavelab::detail
