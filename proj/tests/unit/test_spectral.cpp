#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/spectral.hpp"

using namespace wavelab;
using wavelab::test::direct_coeff;

namespace {
constexpr double pi = std::numbers::pi;

RealField random_field(const PeriodicGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> v(g.size());
  for (double& x : v) x = nd(rng);
  return RealField(g, v);
}
}  // namespace

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(PeriodicGrid(10.0, 100), ConfigError);
  EXPECT_THROW(PeriodicGrid(10.0, 4), ConfigError);
  EXPECT_THROW(PeriodicGrid(0.0, 64), ConfigError);
  PeriodicGrid g(10.0, 64);
  EXPECT_DOUBLE_EQ(g.point(32), 0.0);
  EXPECT_EQ(g.frequency(g.slot(-32)), -32);
  EXPECT_THROW(g.slot(32), ConfigError);
}

TEST(Field, LengthMismatchAndNonFinite) {
  PeriodicGrid g(1.0, 16);
  EXPECT_THROW(RealField(g, std::vector<double>(15)), ConfigError);
  std::vector<double> v(16, 0.0);
  v[3] = std::nan("");
  EXPECT_THROW(RealField(g, v), ValidationError);
}

TEST(Transform, ConstantField) {
  for (double P : {1.0, 7.5, 128.0}) {
    PeriodicGrid g(P, 32);
    const auto c = to_spectral(RealField(g, std::vector<double>(32, 2.5)));
    EXPECT_NEAR(c.coeff(0).real(), 2.5 * std::sqrt(P), 1e-13 * std::sqrt(P));
    for (int k = 1; k < 16; ++k) EXPECT_LT(std::abs(c.coeff(k)), 1e-13 * std::sqrt(P));
  }
}

TEST(Transform, SingleSineMode) {
  const double P = 12.0;
  PeriodicGrid g(P, 64);
  const auto c = to_spectral(RealField::from_function(g, [&](double x) { return std::sin(2 * pi * x / P); }));
  EXPECT_NEAR(std::abs(c.coeff(1)), std::sqrt(P) / 2, 1e-13);
  EXPECT_NEAR(std::abs(c.coeff(-1)), std::sqrt(P) / 2, 1e-13);
  for (int k = 2; k < 32; ++k) EXPECT_LT(std::abs(c.coeff(k)), 1e-13);
  EXPECT_LT(std::abs(c.coeff(0)), 1e-13);
}

TEST(Transform, MatchesDirectSummationAtN16) {
  std::mt19937_64 rng(11);
  PeriodicGrid g(3.7, 16);
  const auto u = random_field(g, rng);
  const auto c = to_spectral(u);
  for (int k = -8; k < 8; ++k) EXPECT_LT(std::abs(c.coeff(k) - direct_coeff(u, k)), 1e-14) << k;
  const auto back = to_real(c);
  EXPECT_LT(test::max_abs_diff(back.values(), u.values()), 1e-13 * u.sup_norm());
}

TEST(Transform, RoundTripAllSizes) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 8; n <= 8192; n *= 2) {
    PeriodicGrid g(2.0 * n, n);
    const auto u = random_field(g, rng);
    const auto back = to_real(to_spectral(u));
    EXPECT_LT(test::max_abs_diff(back.values(), u.values()), 1e-13 * u.sup_norm()) << n;
  }
}

TEST(Transform, Parseval) {
  std::mt19937_64 rng(6);
  for (std::size_t n : {16u, 256u, 4096u}) {
    PeriodicGrid g(40.0, n);
    const auto u = random_field(g, rng);
    double quad = 0.0;
    for (double v : u.values()) quad += v * v;
    quad *= g.spacing();
    double coeffs = 0.0;
    const auto uh = to_spectral(u);
    for (const auto& c : uh.coeffs()) coeffs += std::norm(c);
    EXPECT_NEAR(coeffs, quad, 1e-12 * quad);
    EXPECT_NEAR(l2_norm(u) * l2_norm(u), quad, 1e-12 * quad);
  }
}

TEST(Sobolev, ConstantField) {
  PeriodicGrid g(9.0, 32);
  const RealField u(g, std::vector<double>(32, -1.5));
  for (double s : {0.0, 0.5, 1.0, 3.0}) EXPECT_NEAR(hsp_norm(u, s), 1.5 * 3.0, 1e-13);
}

TEST(Sobolev, SineAtTwoPi) {
  PeriodicGrid g(2 * pi, 64);
  const auto u = RealField::from_function(g, [](double x) { return std::sin(x); });
  EXPECT_NEAR(hsp_norm_squared(u, 1.0), 2 * pi, 1e-12);
  EXPECT_NEAR(hsp_norm(u, 0.0), l2_norm(u), 1e-14);
}

TEST(Sobolev, TwoModeAgainstDirectSum) {
  const double P = 17.0;
  PeriodicGrid g(P, 128);
  const auto u = RealField::from_function(
      g, [&](double x) { return 0.3 + std::cos(2 * pi * 3 * x / P) - 0.7 * std::sin(2 * pi * 11 * x / P); });
  for (double s : {0.0, 0.75, 2.0}) {
    double ref = 0.0;
    for (int k = -64; k < 64; ++k) {
      const double xi = 2 * pi * k / P;
      ref += std::pow(1 + xi * xi, s) * std::norm(direct_coeff(u, k));
    }
    EXPECT_NEAR(hsp_norm_squared(u, s), ref, 1e-12 * ref);
  }
}

TEST(Sobolev, NegativeIndexRejected) {
  PeriodicGrid g(1.0, 8);
  EXPECT_THROW(hsp_norm(RealField(g), -0.1), ConfigError);
}

TEST(Sobolev, MonotoneInIndex) {
  std::mt19937_64 rng(9);
  PeriodicGrid g(30.0, 256);
  for (int trial = 0; trial < 5; ++trial) {
    const auto u = random_field(g, rng);
    double prev = 0.0;
    for (double s = 0.0; s <= 3.0; s += 0.25) {
      const double h = hsp_norm(u, s);
      EXPECT_GE(h, prev);
      prev = h;
    }
  }
}

TEST(Split, ProfileShape) {
  FrequencySplitSpec spec(2.0, 0.5);
  EXPECT_EQ(spec.profile(0.0), 1.0);
  EXPECT_EQ(spec.profile(1.5), 1.0);
  EXPECT_EQ(spec.profile(2.0), 0.0);
  EXPECT_EQ(spec.profile(-1.2), spec.profile(1.2));
  double prev = 1.0;
  for (double xi = 1.5; xi <= 2.0; xi += 0.01) {
    EXPECT_LE(spec.profile(xi), prev);
    prev = spec.profile(xi);
  }
  EXPECT_THROW(FrequencySplitSpec(1.0, 1.0), ConfigError);
}

TEST(Split, PlateauCases) {
  const double P = 2 * pi;
  PeriodicGrid g(P, 64);
  FrequencySplitSpec spec(10.0, 2.0);
  const auto low = RealField::from_function(g, [](double x) { return 1 + std::cos(3 * x) + std::sin(8 * x); });
  const auto s = frequency_split(low, spec);
  EXPECT_LT(test::max_abs_diff(s.low.values(), low.values()), 1e-14);
  EXPECT_LT(s.high.sup_norm(), 1e-14);
  const auto high = RealField::from_function(g, [](double x) { return std::cos(12 * x); });
  EXPECT_LT(frequency_split(high, spec).low.sup_norm(), 1e-14);
}

TEST(Split, ReconstructionExact) {
  std::mt19937_64 rng(3);
  PeriodicGrid g(50.0, 512);
  const auto u = random_field(g, rng);
  const auto s = frequency_split(u, FrequencySplitSpec(8.0, 3.0));
  const auto c = to_spectral(u);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Complex sum = s.low_coeffs.coeffs()[j] + s.high_coeffs.coeffs()[j];
    const double ulp = std::max(std::abs(c.coeffs()[j]) * std::numeric_limits<double>::epsilon(),
                                std::numeric_limits<double>::denorm_min());
    EXPECT_LE(std::abs(sum - c.coeffs()[j]), 1.5 * ulp) << j;
  }
  const auto sum = s.low + s.high;
  EXPECT_LT(test::max_abs_diff(sum.values(), u.values()), 1e-14 * u.sup_norm());
}

TEST(Split, CutoffAboveNyquistRejected) {
  PeriodicGrid g(2 * pi, 16);
  EXPECT_THROW(frequency_split(RealField(g), FrequencySplitSpec(8.0, 1.0)), ConfigError);
}

TEST(Operator, MatchesDirectMultiplication) {
  std::mt19937_64 rng(21);
  PeriodicGrid g(6.0, 32);
  const auto u = random_field(g, rng);
  auto w = [&](int k) { return 1.0 / (1.0 + std::abs(g.wavenumber(k))); };
  const auto op = DiagonalOperator::from_symbol(g, [](double xi) { return 1.0 / (1.0 + std::abs(xi)); });
  const auto got = op.apply(u);
  const auto ref = test::direct_multiply(u, w);
  EXPECT_LT(test::max_abs_diff(got.values(), ref), 1e-13);
}

TEST(Interpolant, ReproducesSamplesAndTranslates) {
  std::mt19937_64 rng(2);
  PeriodicGrid g(10.0, 64);
  const auto u = test::smooth_random(g, rng, 10);
  const auto pts = g.points();
  const auto at = evaluate_interpolant(u, pts);
  EXPECT_LT(test::max_abs_diff(at, u.values()), 1e-13);
  const auto shifted = translate(u, 3 * g.spacing());
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(shifted[(j + 3) % 64], u[j], 1e-13);
}
