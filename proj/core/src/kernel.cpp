#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/symbols.hpp"

namespace wavelab {
namespace {

void check_layout(double half_width, std::size_t count) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw ConfigError("kernel half-width must be positive");
  if (count < 8 || (count & (count - 1)) != 0) throw ConfigError("kernel sample count must be a power of two >= 8");
}

KernelSample make_layout(double half_width, std::size_t count) {
  KernelSample ks;
  ks.half_width = half_width;
  ks.count = count;
  ks.spacing = 2.0 * half_width / static_cast<double>(count);
  ks.max_frequency = std::numbers::pi * static_cast<double>(count) / (2.0 * half_width);
  ks.x.resize(count);
  for (std::size_t j = 0; j < count; ++j) ks.x[j] = -half_width + static_cast<double>(j) * ks.spacing;
  return ks;
}

void finish_statistics(KernelSample& ks) {
  double l1 = 0.0, tail = 0.0;
  for (std::size_t j = 0; j < ks.count; ++j) {
    const double a = std::abs(ks.values[j]);
    l1 += a;
    if (std::abs(ks.x[j]) >= 0.5 * ks.half_width) tail += a;
  }
  ks.l1_estimate = l1 * ks.spacing;
  ks.tail_estimate = tail * ks.spacing;
}

}  // namespace

double KernelSample::min_value() const { return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end()); }
double KernelSample::max_value() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }

KernelSample kernel_sample(const SymbolSpec& sym, double half_width, std::size_t count) {
  check_layout(half_width, count);
  KernelSample ks = make_layout(half_width, count);

  // K(x_j) ~ (dxi / sqrt(2 pi)) sum_k m(k dxi) exp(i k dxi x_j) with x_j = -X + j h,
  // so exp(i k dxi x_j) = (-1)^k exp(2 pi i k j / M).
  const double dxi = std::numbers::pi / half_width;
  const std::size_t half = count / 2 + 1;
  std::vector<Complex> spectrum(half);
  double peak = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const double v = sym(static_cast<double>(k) * dxi);
    peak = std::max(peak, std::abs(v));
    spectrum[k] = (k % 2 == 0) ? v : -v;
  }
  ks.underresolved = std::abs(sym(ks.max_frequency)) > 0.05 * peak;

  ks.values.resize(count);
  detail::RealFft::get(count).inverse(spectrum, ks.values);
  const double scale = dxi / std::sqrt(2.0 * std::numbers::pi);
  for (double& v : ks.values) v *= scale;
  finish_statistics(ks);
  return ks;
}

KernelSample kernel_from_function(const std::function<double(double)>& kernel, double half_width,
                                  std::size_t count) {
  check_layout(half_width, count);
  KernelSample ks = make_layout(half_width, count);
  ks.values.resize(count);
  for (std::size_t j = 0; j < count; ++j) ks.values[j] = kernel(ks.x[j]);
  finish_statistics(ks);
  return ks;
}

PeriodizationReport periodization_check(const SymbolSpec& sym, const PeriodicGrid& grid, const KernelSample& ks) {
  const double period = grid.period();
  if (ks.half_width < 3.0 * period)
    throw ConfigError("kernel sample must cover at least three periods on each side (X >= 3P)");
  const double ratio = period / ks.spacing;
  const auto per = static_cast<std::size_t>(std::llround(ratio));
  if (per == 0 || std::abs(ratio - static_cast<double>(per)) > 1e-9 * ratio)
    throw ConfigError("period must be an integer multiple of the kernel sample spacing");

  // Residue r collects the samples at -X + r h + l P.
  std::vector<double> folded(per, 0.0);
  for (std::size_t j = 0; j < ks.count; ++j) folded[j % per] += ks.values[j];

  PeriodizationReport report;
  report.max_frequency = static_cast<int>(grid.size() / 4);
  report.images = static_cast<int>(std::floor(ks.half_width / period));
  const double norm = ks.spacing / std::sqrt(period);
  for (int k = 0; k <= report.max_frequency; ++k) {
    Complex c = 0.0;
    const double w = -2.0 * std::numbers::pi * k / period;
    for (std::size_t r = 0; r < per; ++r) {
      const double y = -ks.half_width + static_cast<double>(r) * ks.spacing;
      c += folded[r] * std::polar(1.0, w * y);
    }
    c *= norm;
    report.coefficients.push_back(c);
    const double target = std::sqrt(2.0 * std::numbers::pi / period) * sym(grid.wavenumber(k));
    const double diff = std::abs(c - target);
    const double dev = target != 0.0 ? diff / std::abs(target) : diff;
    if (dev > report.max_relative_deviation) {
      report.max_relative_deviation = dev;
      report.worst_frequency = k;
    }
  }
  return report;
}

}  // namespace wavelab
