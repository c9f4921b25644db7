#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace wavelab::detail {

/// Unnormalised real-to-half-complex DFT of one size, FFTW backed.
///
/// forward: Y_k = sum_j x_j exp(-2 pi i j k / n), k = 0..n/2.
/// inverse: x_j = sum over the Hermitian extension of Y_k exp(+2 pi i j k / n).
/// Instances are shared and thread safe; plans are created once per size.
class RealFft {
 public:
  static const RealFft& get(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  ~RealFft();

 private:
  explicit RealFft(std::size_t n);

  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace wavelab::detail
