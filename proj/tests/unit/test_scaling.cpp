#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/scaling.hpp"

using namespace wavelab;

namespace {
constexpr double pi = std::numbers::pi;

// mean over a period of (1 + sin x)^n for integer n, from the moments of sin
double sin_moment_mean(int n) {
  // mean of sin^k: 0 for odd k, (k-1)!!/k!! for even k
  auto even_moment = [](int k) {
    double r = 1.0;
    for (int i = k - 1; i >= 1; i -= 2) r *= static_cast<double>(i) / (i + 1);
    return r;
  };
  double s = 0.0, binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k % 2 == 0) s += binom * even_moment(k);
    binom = binom * (n - k) / (k + 1);
  }
  return s;
}

// Gamma_q for integer 2 + q via the trig-moment expansion
double gamma_oracle(int q) { return std::pow(2.0 / 3.0, (2.0 + q) / 2.0) * sin_moment_mean(2 + q); }

SolveConfig whitham_config() {
  SolveConfig c;
  c.period = 128.0;
  c.points = 2048;
  return c;
}

const SweepResult& whitham_sweep() {
  static const SweepResult s = [] {
    const auto ladder = half_decade_ladder(1e-2, 1e-4);
    return sweep_mu(whitham_config(), ladder);
  }();
  return s;
}
}  // namespace

TEST(Jensen, ClosedForms) {
  EXPECT_NEAR(jensen_gamma(0.0), 1.0, 1e-12);
  EXPECT_NEAR(gamma_oracle(2), 35.0 / 18.0, 1e-15);
  EXPECT_NEAR(jensen_gamma(2.0), gamma_oracle(2), 1e-9);
  EXPECT_NEAR(jensen_gamma(1.0), 2.5 * std::pow(2.0 / 3.0, 1.5), 1e-9);
  EXPECT_NEAR(jensen_gamma(1.0), 1.360828, 1e-6);
  for (int q : {3, 4, 6}) EXPECT_NEAR(jensen_gamma(q), gamma_oracle(q), 1e-9 * gamma_oracle(q));
  EXPECT_THROW(jensen_gamma(-0.1), DomainError);
}

TEST(Jensen, ExceedsOneAndTendsToOne) {
  for (double q : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) EXPECT_GT(jensen_gamma(q), 1.0) << q;
  double prev = jensen_gamma(0.1) - 1.0;
  for (double q : {0.05, 0.01, 1e-3, 1e-4}) {
    const double g = jensen_gamma(q) - 1.0;
    EXPECT_GT(g, 0.0);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Fit, ExactPowerLaw) {
  std::vector<double> mu, v;
  for (double m = 1e-2; m >= 0.99e-4; m /= std::sqrt(10.0)) {
    mu.push_back(m);
    v.push_back(3 * std::sqrt(m));
  }
  const auto f = fit_power_law("x", mu, v);
  EXPECT_NEAR(f.slope, 0.5, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-10);
  EXPECT_EQ(f.points, 5u);
}

TEST(Fit, NoisyPowerLaw) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd(0.0, 0.01);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> mu, v;
    for (double m = 1e-2; m >= 0.99e-4; m /= std::sqrt(10.0)) {
      mu.push_back(m);
      v.push_back(0.7 * std::pow(m, 2.0 / 3.0) * (1 + nd(rng)));
    }
    EXPECT_NEAR(fit_power_law("x", mu, v).slope, 2.0 / 3.0, 0.02);
  }
}

TEST(Fit, Preconditions) {
  const std::vector<double> mu{1e-2, 1e-3, 1e-4, 1e-5};
  const std::vector<double> v{1, 2, 3, 4};
  EXPECT_THROW(fit_power_law("x", mu, v), ValidationError);
  // nonpositive entries dropped, leaving too few
  const std::vector<double> mu6{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const std::vector<double> v6{1, -2, 3, 0, 5, 6};
  EXPECT_THROW(fit_power_law("x", mu6, v6), ValidationError);
  // five points inside one decade
  const std::vector<double> narrow{1e-2, 8e-3, 6e-3, 4e-3, 2e-3};
  EXPECT_THROW(fit_power_law("x", narrow, std::vector<double>(5, 1.0)), ValidationError);
}

TEST(Sweep, LadderHelper) {
  const auto l = half_decade_ladder(1e-2, 1e-4);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_DOUBLE_EQ(l.front(), 1e-2);
  EXPECT_NEAR(l.back(), 1e-4, 1e-18);
  const std::vector<double> up{1e-3, 1e-2};
  EXPECT_THROW(sweep_mu(whitham_config(), up), ConfigError);
}

TEST(Sweep, SingleRung) {
  const std::vector<double> one{1e-3};
  const auto s = sweep_mu(whitham_config(), one);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_TRUE(s.rows[0].accepted());
  EXPECT_THROW(fit_exponent(s.rows, Quantity::speed_excess, 1.0), ValidationError);
}

TEST(Sweep, WhithamLadder) {
  const auto& s = whitham_sweep();
  ASSERT_EQ(s.rows.size(), 5u);
  EXPECT_TRUE(s.valid);
  EXPECT_EQ(s.failures, 0u);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    EXPECT_TRUE(s.rows[i].accepted());
    EXPECT_GT(s.rows[i].nu - 1.0, 0.0);
    if (i > 0) EXPECT_GT(s.rows[i].mu, s.rows[i - 1].mu);
  }
  const auto speed = fit_exponent(s.rows, Quantity::speed_excess, 1.0);
  EXPECT_NEAR(speed.slope, 2.0 / 3.0, 0.07);
  EXPECT_EQ(speed.quantity, "nu_minus_m0");
}

TEST(Sweep, Deterministic) {
  const auto a = sweep_mu(whitham_config(), half_decade_ladder(1e-2, 1e-4));
  const auto& b = whitham_sweep();
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].nu, b.rows[i].nu);
    EXPECT_EQ(a.rows[i].energy, b.rows[i].energy);
    EXPECT_EQ(a.rows[i].sup_norm, b.rows[i].sup_norm);
  }
}

TEST(EnergyGain, WhithamLadder) {
  const auto& s = whitham_sweep();
  const auto sym = whitham_symbol();
  const NonlinearitySpec nl(1.0, 1.0);
  const auto r = energy_gain_check(s, sym, nl);
  EXPECT_TRUE(r.bounded_away);
  EXPECT_GT(r.gain_min, 0.0);
  EXPECT_LE(r.gain_max / r.gain_min, 3.0);
  EXPECT_TRUE(r.periodic_bound);
  const auto again = energy_gain_check(s, sym, nl);
  EXPECT_EQ(again.gain, r.gain);
  EXPECT_EQ(again.periodic_margin, r.periodic_margin);
}

TEST(EnergyGain, TestFunctionMeetsPeriodicBound) {
  const auto sym = whitham_symbol();
  const NonlinearitySpec nl(1.0, 1.0);
  for (double mu : {1e-2, 1e-3, 1e-4}) {
    PeriodicGrid g(128.0, 512);
    const auto u = initial_guess(mu, g, 1.0);
    const double E = energy(u, sym, nl, mu).E;
    EXPECT_GT(periodic_bound_margin(E, mu, 128.0, nl, 1.0), 0.0) << mu;
  }
}

TEST(EnergyGain, LinearConstantMode) {
  const double mu = 1e-3, P = 64.0;
  PeriodicGrid g(P, 64);
  const RealField u(g, std::vector<double>(64, std::sqrt(2 * mu / P)));
  const double E = energy(u, whitham_symbol(), NonlinearitySpec(1.0, 1e-300), mu).E;
  EXPECT_NEAR(E, -mu, 1e-18);
  EXPECT_NEAR((-E - mu) / std::pow(mu, 1 + 2.0 / 3.0), 0.0, 1e-10);
}

TEST(Gkdv, ProfileSolvesItsOde) {
  std::vector<double> xs;
  for (int i = -4000; i <= 4000; ++i) xs.push_back(i * 0.01);
  for (double q : {0.5, 1.0, 2.0, 3.0}) {
    for (double gamma : {1.0, -2.0}) {
      const auto phi = make_gkdv_profile(0.05, -1.0 / 3.0, gamma, q);
      ASSERT_TRUE(phi);
      const NonlinearitySpec nl(q, gamma);
      EXPECT_LT(gkdv_ode_residual(*phi, nl, xs), 1e-10) << q;
      // independent check with a five-point second difference
      const double h = 1e-3;
      double worst = 0.0, top = 0.0;
      for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
        const double d2 = (-(*phi)(x + 2 * h) + 16 * (*phi)(x + h) - 30 * (*phi)(x) + 16 * (*phi)(x - h) -
                           (*phi)(x - 2 * h)) /
                          (12 * h * h);
        const double res = -0.05 * (*phi)(x) + (1.0 / 6.0) * d2 + nl.leading((*phi)(x));
        worst = std::max(worst, std::abs(res));
        top = std::max(top, std::abs((*phi)(x)));
      }
      EXPECT_LT(worst / (0.05 * top), 1e-6) << q;
    }
  }
}

TEST(Gkdv, KdvShapeAndApplicability) {
  const auto phi = make_gkdv_profile(0.02, -1.0 / 3.0, 1.0, 1.0);
  ASSERT_TRUE(phi);
  // q = 1: a = 3c / (2 |gamma|), b = sqrt(2c / |d|) / 2
  EXPECT_NEAR(phi->a, 1.5 * 0.02, 1e-15);
  EXPECT_NEAR(phi->b, 0.5 * std::sqrt(0.02 / (1.0 / 6.0)), 1e-15);
  for (double x : {0.0, 1.0, 7.0}) EXPECT_NEAR((*phi)(x), phi->a / std::pow(std::cosh(phi->b * x), 2), 1e-16);
  EXPECT_FALSE(make_gkdv_profile(-0.01, -1.0 / 3.0, 1.0, 1.0));
  EXPECT_FALSE(make_gkdv_profile(0.01, 0.2, 1.0, 1.0));
  WaveSolution dummy(RealField(PeriodicGrid(10.0, 64)));
  dummy.nu = 1.01;
  const auto cmp = gkdv_profile_compare(dummy, whitham_symbol(), NonlinearitySpec(4.0, 1.0));
  EXPECT_FALSE(cmp.applicable);
  EXPECT_FALSE(cmp.note.empty());
}

TEST(Gkdv, DistanceShrinksAlongLadder) {
  const auto& s = whitham_sweep();
  const NonlinearitySpec nl(1.0, 1.0);
  std::vector<double> d;
  // rows ascend in mu; walk from large to small
  for (std::size_t i = s.solutions.size(); i-- > 0;) {
    const auto cmp = gkdv_profile_compare(s.solutions[i], whitham_symbol(), nl);
    ASSERT_TRUE(cmp.applicable);
    EXPECT_LT(cmp.ode_residual, 1e-10);
    d.push_back(cmp.distance);
  }
  for (std::size_t i = 1; i < d.size(); ++i) EXPECT_LT(d[i], d[i - 1]);
  EXPECT_LT(d.back(), 0.05);
}

TEST(Sign, Verdicts) {
  PeriodicGrid g(64.0, 256);
  const auto seed = initial_guess(1e-3, g, 1.0);
  EXPECT_EQ(profile_sign(seed, 1e-8), SignVerdict::elevation);
  EXPECT_EQ(profile_sign(initial_guess(1e-3, g, -1.0), 1e-8), SignVerdict::depression);
  const auto mixed = RealField::from_function(g, [](double x) { return std::sin(2 * pi * x / 64.0); });
  EXPECT_EQ(profile_sign(mixed, 1e-8), SignVerdict::mixed);
  const RealField pos(g, std::vector<double>(256, 0.2));
  EXPECT_EQ(profile_sign(pos, 1e-8), SignVerdict::elevation);
}

TEST(Sign, KernelSigns) {
  EXPECT_EQ(kernel_sign(whitham_symbol()), KernelSign::nonnegative);
  EXPECT_EQ(kernel_sign(fractional_symbol(-1.5)), KernelSign::nonnegative);
  // sinc-like symbol: indicator of |xi| < 1 smoothed, kernel oscillates
  const auto box = table_symbol("box", {0.0, 0.9, 1.0, 1.1, 3.0}, {1.0, 1.0, 0.5, 0.0, 0.0});
  EXPECT_EQ(kernel_sign(box), KernelSign::sign_changing);
}

TEST(Sign, SolutionsFromLadder) {
  const auto& s = whitham_sweep();
  for (const auto& sol : s.solutions) EXPECT_EQ(sign_check(sol, whitham_symbol()), SignVerdict::elevation);
  WaveSolution sub(s.solutions.front().u);
  sub.nu = 0.99;
  EXPECT_EQ(sign_check(sub, whitham_symbol()), SignVerdict::not_applicable);
}

TEST(Solitary, IdenticalPeriodTwice) {
  SolveConfig c;
  c.period = 64.0;
  c.points = 1024;
  const std::vector<double> periods{64.0, 64.0};
  const auto r = solitary_limit_check(c, periods);
  ASSERT_EQ(r.nu_differences.size(), 1u);
  EXPECT_EQ(r.nu_differences[0], 0.0);
  EXPECT_EQ(r.energy_differences[0], 0.0);
}

TEST(Solitary, PeriodLadder) {
  SolveConfig c;
  c.period = 64.0;
  c.points = 1024;
  const std::vector<double> periods{64.0, 128.0, 256.0};
  const auto r = solitary_limit_check(c, periods);
  ASSERT_EQ(r.rungs.size(), 3u);
  EXPECT_TRUE(r.decreasing);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.nu_differences.back(), 1e-2);
  EXPECT_LT(r.energy_differences.back(), 1e-2);
  EXPECT_LT(r.rungs.back().tail, 1e-3);
}

TEST(Probe, ControlAndBoundary) {
  SolveConfig c;
  c.period = 512.0;
  c.points = 4096;
  const std::vector<double> ladder{1e-2, 3.1622776601683795e-3, 1e-3, 3.1622776601683794e-4};
  c.q = 1.0;
  const auto ctrl = nonexistence_probe(c, ladder);
  EXPECT_EQ(ctrl.verdict, ProbeVerdict::branch_persists);
  EXPECT_TRUE(ctrl.long_wave_defined);
  c.q = 4.0;
  const auto crit = nonexistence_probe(c, ladder);
  EXPECT_FALSE(crit.long_wave_defined);
  EXPECT_FALSE(crit.amplitude_fit.has_value());
  EXPECT_NE(crit.fit_note.find("undefined"), std::string::npos);
  EXPECT_EQ(crit.rungs.size(), ladder.size());
  EXPECT_STREQ(to_string(crit.verdict), to_string(crit.verdict));
}

TEST(Tail, Ratio) {
  PeriodicGrid g(40.0, 256);
  const auto u = RealField::from_function(g, [](double x) { return std::exp(-x * x); });
  EXPECT_LT(tail_ratio(u), 1e-40);
  const RealField c(g, std::vector<double>(256, 1.0));
  EXPECT_EQ(tail_ratio(c), 1.0);
}
