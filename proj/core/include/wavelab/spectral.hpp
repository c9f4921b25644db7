#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wavelab {

using Complex = std::complex<double>;

/// One period (-P/2, P/2) sampled at N equispaced collocation points.
///
/// Points are x_j = -P/2 + j P/N. Coefficient arrays are stored in FFT order:
/// slot j < N/2 holds frequency k = j, slot j >= N/2 holds k = j - N, so the
/// lattice is k in [-N/2, N/2) with the single Nyquist index -N/2.
class PeriodicGrid {
 public:
  /// Throws ConfigError unless period > 0 and points is a power of two >= 8.
  PeriodicGrid(double period, std::size_t points);

  double period() const noexcept { return period_; }
  std::size_t size() const noexcept { return points_; }
  std::size_t half_size() const noexcept { return points_ / 2 + 1; }
  double spacing() const noexcept { return period_ / static_cast<double>(points_); }

  double point(std::size_t j) const noexcept {
    return -0.5 * period_ + static_cast<double>(j) * spacing();
  }
  std::vector<double> points() const;

  /// Integer frequency held in storage slot `slot` of a full coefficient array.
  int frequency(std::size_t slot) const noexcept;
  /// Storage slot of frequency k; throws ConfigError outside [-N/2, N/2).
  std::size_t slot(int k) const;

  /// Angular wavenumber 2 pi k / P.
  double wavenumber(int k) const noexcept;
  double nyquist_wavenumber() const noexcept;

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  double period_;
  std::size_t points_;
};

/// Real samples of a P-periodic profile.
class RealField {
 public:
  explicit RealField(PeriodicGrid grid);
  /// Throws ConfigError on a length mismatch and ValidationError on non-finite entries.
  RealField(PeriodicGrid grid, std::vector<double> values);

  static RealField from_function(const PeriodicGrid& grid, const std::function<double(double)>& f);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

  double max() const;
  double min() const;
  double sup_norm() const;
  double mean() const;

  friend RealField operator+(const RealField& a, const RealField& b);
  friend RealField operator-(const RealField& a, const RealField& b);
  friend RealField operator*(double s, const RealField& a);

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients of a real field in the per-period unitary convention
///   coeff(k) = P^{-1/2} * integral over one period of u(x) exp(-2 pi i k x / P) dx,
/// realised by the collocation sum. Hermitian symmetric, Nyquist coefficient real.
class SpectralField {
 public:
  /// Takes a full FFT-ordered array; throws ConfigError on length mismatch and
  /// ValidationError when Hermitian symmetry fails beyond roundoff.
  SpectralField(PeriodicGrid grid, std::vector<Complex> coeffs);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of integer frequency k in [-N/2, N/2).
  Complex coeff(int k) const { return coeffs_[grid_.slot(k)]; }

 private:
  PeriodicGrid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField to_spectral(const RealField& u);
RealField to_real(const SpectralField& u_hat);

/// <k>_P^{2s} = (1 + (2 pi k / P)^2)^s.
double sobolev_weight(const PeriodicGrid& grid, int k, double s);

/// Collocation L^2 inner product integral of u v over one period.
double inner_product(const RealField& u, const RealField& v);

double l2_norm(const RealField& u);
/// Throws ConfigError for negative s.
double hsp_norm(const RealField& u, double s);
double hsp_norm_squared(const RealField& u, double s);

/// Smooth even cutoff profile phi with phi = 1 on |xi| <= cutoff - width and
/// phi = 0 on |xi| >= cutoff; quintic smoothstep in between.
class FrequencySplitSpec {
 public:
  /// Throws ConfigError unless 0 < width < cutoff.
  FrequencySplitSpec(double cutoff, double width);

  double cutoff() const noexcept { return cutoff_; }
  double width() const noexcept { return width_; }
  double profile(double xi) const noexcept;

 private:
  double cutoff_;
  double width_;
};

struct FrequencySplit {
  SpectralField low_coeffs;
  SpectralField high_coeffs;
  RealField low;
  RealField high;
};

/// Throws ConfigError when the cutoff is not below the grid Nyquist wavenumber.
FrequencySplit frequency_split(const RealField& u, const FrequencySplitSpec& spec);

/// Real, even Fourier multiplier tabulated on one grid: weight(k) for k = 0..N/2.
///
/// Cheap to copy-free share between solver stages; apply never allocates when
/// the caller supplies storage.
class DiagonalOperator {
 public:
  DiagonalOperator(PeriodicGrid grid, std::vector<double> half_weights);
  static DiagonalOperator from_symbol(const PeriodicGrid& grid, const std::function<double(double)>& symbol);
  static DiagonalOperator sobolev(const PeriodicGrid& grid, double s);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::span<const double> half_weights() const noexcept { return weights_; }
  double weight(int k) const noexcept;

  /// out = Op(in); in and out may alias.
  void apply(std::span<const double> in, std::span<double> out) const;
  RealField apply(const RealField& u) const;
  /// sum_k weight(k) |coeff(k)|^2, i.e. <Op u, u> in L^2.
  double quadratic_form(std::span<const double> u) const;

 private:
  PeriodicGrid grid_;
  std::vector<double> weights_;
};

/// Evaluates the trigonometric interpolant of u at arbitrary points (periodic in P).
std::vector<double> evaluate_interpolant(const RealField& u, std::span<const double> xs);

/// Translates u by h (u(x) -> u(x - h)) exactly on trigonometric polynomials.
RealField translate(const RealField& u, double h);

}  // namespace wavelab
