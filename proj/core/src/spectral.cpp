#include "wavelab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "wavelab/errors.hpp"

namespace wavelab {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b) {
  if (!(a == b)) throw ConfigError("fields live on different grids");
}

// (-1)^k for the shift from x_j = -P/2 + j dx to DFT index j.
double alternating(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Half spectrum c_k, k = 0..N/2, of u in the unitary per-period convention.
std::vector<Complex> half_coefficients(const PeriodicGrid& grid, std::span<const double> u) {
  std::vector<Complex> half(grid.half_size());
  detail::RealFft::get(grid.size()).forward(u, half);
  const double scale = grid.spacing() / std::sqrt(grid.period());
  for (std::size_t k = 0; k < half.size(); ++k) half[k] *= scale * alternating(static_cast<int>(k));
  return half;
}

std::vector<double> from_half_coefficients(const PeriodicGrid& grid, std::span<const Complex> half) {
  std::vector<Complex> y(half.begin(), half.end());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] *= alternating(static_cast<int>(k));
  std::vector<double> u(grid.size());
  detail::RealFft::get(grid.size()).inverse(y, u);
  const double scale = 1.0 / std::sqrt(grid.period());
  for (double& v : u) v *= scale;
  return u;
}

}  // namespace

// ---------------------------------------------------------------------------
// PeriodicGrid

PeriodicGrid::PeriodicGrid(double period, std::size_t points) : period_(period), points_(points) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigError("grid period must be positive and finite");
  }
  if (points < 8 || !is_power_of_two(points)) {
    std::ostringstream os;
    os << "grid size must be a power of two >= 8 (got " << points << ")";
    throw ConfigError(os.str());
  }
}

std::vector<double> PeriodicGrid::points() const {
  std::vector<double> x(points_);
  for (std::size_t j = 0; j < points_; ++j) x[j] = point(j);
  return x;
}

int PeriodicGrid::frequency(std::size_t slot) const noexcept {
  const auto half = points_ / 2;
  return slot < half ? static_cast<int>(slot) : static_cast<int>(slot) - static_cast<int>(points_);
}

std::size_t PeriodicGrid::slot(int k) const {
  const int half = static_cast<int>(points_ / 2);
  if (k < -half || k >= half) throw ConfigError("frequency outside the grid lattice");
  return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<int>(points_));
}

double PeriodicGrid::wavenumber(int k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / period_;
}

double PeriodicGrid::nyquist_wavenumber() const noexcept {
  return std::numbers::pi * static_cast<double>(points_) / period_;
}

// ---------------------------------------------------------------------------
// RealField

RealField::RealField(PeriodicGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream os;
    os << "field has " << values_.size() << " samples but the grid has " << grid_.size();
    throw ConfigError(os.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("field contains non-finite samples");
  }
}

RealField RealField::from_function(const PeriodicGrid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.point(j));
  return RealField(grid, std::move(v));
}

double RealField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double RealField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RealField::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double RealField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

RealField operator+(const RealField& a, const RealField& b) {
  require_same_grid(a.grid_, b.grid_);
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.values_[j] + b.values_[j];
  return RealField(a.grid_, std::move(v));
}

RealField operator-(const RealField& a, const RealField& b) {
  require_same_grid(a.grid_, b.grid_);
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.values_[j] - b.values_[j];
  return RealField(a.grid_, std::move(v));
}

RealField operator*(double s, const RealField& a) {
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = s * a.values_[j];
  return RealField(a.grid_, std::move(v));
}

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(PeriodicGrid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  const std::size_t n = grid_.size();
  if (coeffs_.size() != n) throw ConfigError("coefficient array length does not match the grid");
  double scale = 0.0;
  for (const Complex& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double tol = 1e-12 * std::max(scale, 1e-300);
  for (std::size_t j = 1; j < n / 2; ++j) {
    if (std::abs(coeffs_[j] - std::conj(coeffs_[n - j])) > tol) {
      throw ValidationError("coefficients are not Hermitian symmetric");
    }
  }
  if (std::abs(coeffs_[0].imag()) > tol || std::abs(coeffs_[n / 2].imag()) > tol) {
    throw ValidationError("zero and Nyquist coefficients must be real");
  }
}

SpectralField to_spectral(const RealField& u) {
  const PeriodicGrid& grid = u.grid();
  const std::size_t n = grid.size();
  const auto half = half_coefficients(grid, u.values());
  std::vector<Complex> full(n);
  for (std::size_t k = 0; k <= n / 2; ++k) full[k] = half[k];
  full[n / 2] = Complex(half[n / 2].real(), 0.0);
  full[0] = Complex(half[0].real(), 0.0);
  for (std::size_t k = 1; k < n / 2; ++k) full[n - k] = std::conj(half[k]);
  return SpectralField(grid, std::move(full));
}

RealField to_real(const SpectralField& u_hat) {
  const PeriodicGrid& grid = u_hat.grid();
  const auto coeffs = u_hat.coeffs();
  std::vector<Complex> half(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(grid.half_size()));
  return RealField(grid, from_half_coefficients(grid, half));
}

double sobolev_weight(const PeriodicGrid& grid, int k, double s) {
  const double xi = grid.wavenumber(k);
  return std::pow(1.0 + xi * xi, s);
}

double inner_product(const RealField& u, const RealField& v) {
  require_same_grid(u.grid(), v.grid());
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j];
  return s * u.grid().spacing();
}

double hsp_norm_squared(const RealField& u, double s) {
  if (!(s >= 0.0)) throw ConfigError("Sobolev index must be nonnegative");
  return DiagonalOperator::sobolev(u.grid(), s).quadratic_form(u.values());
}

double hsp_norm(const RealField& u, double s) { return std::sqrt(hsp_norm_squared(u, s)); }

double l2_norm(const RealField& u) { return hsp_norm(u, 0.0); }

// ---------------------------------------------------------------------------
// Frequency split

FrequencySplitSpec::FrequencySplitSpec(double cutoff, double width) : cutoff_(cutoff), width_(width) {
  if (!(width > 0.0) || !(width < cutoff)) {
    throw ConfigError("frequency split needs 0 < width < cutoff");
  }
}

double FrequencySplitSpec::profile(double xi) const noexcept {
  const double a = std::abs(xi);
  const double inner = cutoff_ - width_;
  if (a <= inner) return 1.0;
  if (a >= cutoff_) return 0.0;
  const double t = (a - inner) / width_;
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

FrequencySplit frequency_split(const RealField& u, const FrequencySplitSpec& spec) {
  const PeriodicGrid& grid = u.grid();
  if (!(spec.cutoff() < grid.nyquist_wavenumber())) {
    throw ConfigError("frequency split cutoff must lie below the grid Nyquist wavenumber");
  }
  const SpectralField full = to_spectral(u);
  const std::size_t n = grid.size();
  std::vector<Complex> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = spec.profile(grid.wavenumber(grid.frequency(j)));
    lo[j] = phi * full.coeffs()[j];
    hi[j] = full.coeffs()[j] - lo[j];
  }
  SpectralField lo_hat(grid, std::move(lo));
  SpectralField hi_hat(grid, std::move(hi));
  RealField lo_real = to_real(lo_hat);
  RealField hi_real = to_real(hi_hat);
  return {std::move(lo_hat), std::move(hi_hat), std::move(lo_real), std::move(hi_real)};
}

// ---------------------------------------------------------------------------
// DiagonalOperator

DiagonalOperator::DiagonalOperator(PeriodicGrid grid, std::vector<double> half_weights)
    : grid_(grid), weights_(std::move(half_weights)) {
  if (weights_.size() != grid_.half_size()) throw ConfigError("operator weights do not match the grid");
}

DiagonalOperator DiagonalOperator::from_symbol(const PeriodicGrid& grid,
                                               const std::function<double(double)>& symbol) {
  std::vector<double> w(grid.half_size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = symbol(grid.wavenumber(static_cast<int>(k)));
  return DiagonalOperator(grid, std::move(w));
}

DiagonalOperator DiagonalOperator::sobolev(const PeriodicGrid& grid, double s) {
  if (!(s >= 0.0)) throw ConfigError("Sobolev index must be nonnegative");
  std::vector<double> w(grid.half_size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = sobolev_weight(grid, static_cast<int>(k), s);
  return DiagonalOperator(grid, std::move(w));
}

double DiagonalOperator::weight(int k) const noexcept { return weights_[static_cast<std::size_t>(std::abs(k))]; }

void DiagonalOperator::apply(std::span<const double> in, std::span<double> out) const {
  const std::size_t n = grid_.size();
  thread_local std::vector<Complex> half;
  half.resize(grid_.half_size());
  const auto& fft = detail::RealFft::get(n);
  fft.forward(in, half);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < half.size(); ++k) half[k] *= weights_[k] * inv_n;
  // The Nyquist mode of a real signal is real; drop any imaginary residue.
  half[n / 2] = Complex(half[n / 2].real(), 0.0);
  fft.inverse(half, out);
}

RealField DiagonalOperator::apply(const RealField& u) const {
  require_same_grid(grid_, u.grid());
  std::vector<double> out(u.size());
  apply(u.values(), out);
  return RealField(grid_, std::move(out));
}

double DiagonalOperator::quadratic_form(std::span<const double> u) const {
  const std::size_t n = grid_.size();
  const auto half = half_coefficients(grid_, u);
  double s = weights_[0] * std::norm(half[0]) + weights_[n / 2] * std::norm(half[n / 2]);
  for (std::size_t k = 1; k < n / 2; ++k) s += 2.0 * weights_[k] * std::norm(half[k]);
  return s;
}

// ---------------------------------------------------------------------------
// Interpolation

std::vector<double> evaluate_interpolant(const RealField& u, std::span<const double> xs) {
  const PeriodicGrid& grid = u.grid();
  const std::size_t n = grid.size();
  const auto half = half_coefficients(grid, u.values());
  const double inv_sqrt_p = 1.0 / std::sqrt(grid.period());
  const double base = 2.0 * std::numbers::pi / grid.period();
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // e^{i k theta} by complex recurrence, refreshed periodically against drift.
    const double theta = base * xs[i];
    const Complex step(std::cos(theta), std::sin(theta));
    Complex rot(1.0, 0.0);
    double s = half[0].real();
    for (std::size_t k = 1; k < n / 2; ++k) {
      if (k % 64 == 0) {
        rot = Complex(std::cos(theta * static_cast<double>(k)), std::sin(theta * static_cast<double>(k)));
      } else {
        rot *= step;
      }
      s += 2.0 * (half[k] * rot).real();
    }
    // Nyquist term: split evenly between +N/2 and -N/2 so the interpolant is real.
    s += half[n / 2].real() * std::cos(theta * static_cast<double>(n / 2));
    out[i] = s * inv_sqrt_p;
  }
  return out;
}

RealField translate(const RealField& u, double h) {
  const PeriodicGrid& grid = u.grid();
  const std::size_t n = grid.size();
  auto half = half_coefficients(grid, u.values());
  for (std::size_t k = 0; k < half.size(); ++k) {
    const double phase = -grid.wavenumber(static_cast<int>(k)) * h;
    half[k] *= Complex(std::cos(phase), std::sin(phase));
  }
  half[n / 2] = Complex(half[n / 2].real(), 0.0);
  return RealField(grid, from_half_coefficients(grid, half));
}

}  // namespace wavelab
