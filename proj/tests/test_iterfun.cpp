#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "loghardy/iterfun.hpp"

using namespace loghardy;

namespace {
  double binomial(int n, int k) {
      if (k < 0 || n < 0 || k > n) return 0;
      double b = 1;
      for (int i = 1; i <= k; ++i) b = b*(n - k + i)/i;
      return std::round(b);
  }
}

TEST(IteratedLog, KnownValues) {
    EXPECT_NEAR(iterated_log(10, LogDepth(2)), 0.8340324452479557998, 1e-15);
    EXPECT_DOUBLE_EQ(iterated_log(7.5, LogDepth(0)), 7.5);
    EXPECT_NEAR(iterated_log(std::exp(std::exp(1.0)), LogDepth(2)), 1.0, 1e-15);
}

TEST(IteratedLog, NonPositiveIntermediateThrows) {
    EXPECT_THROW(iterated_log(0.5, LogDepth(2)), DomainError);
    EXPECT_THROW(iterated_log(0, LogDepth(1)), DomainError);
    EXPECT_THROW(iterated_log(-1, LogDepth(1)), DomainError);
    EXPECT_NO_THROW(iterated_log(0.5, LogDepth(1)));
}

TEST(IteratedExp, KnownValues) {
    EXPECT_NEAR(iterated_exp(1, LogDepth(2)), 15.154262241479264190, 1e-13);
    EXPECT_NEAR(iterated_exp(1, LogDepth(3))/3814279.1047602205922, 1.0, 1e-14);
    EXPECT_NEAR(iterated_exp(std::sqrt(3.0), LogDepth(2)), 284.92719002524820407, 1e-11);
    EXPECT_DOUBLE_EQ(iterated_exp(0, LogDepth(1)), 1.0);
}

TEST(IteratedExp, OverflowThrows) {
    EXPECT_THROW(iterated_exp(10, LogDepth(3)), OverflowError);
    EXPECT_THROW(iterated_exp(710, LogDepth(1)), OverflowError);
}

TEST(IteratedExp, RoundTrip) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.5);
    for (int trial = 0; trial < 200; ++trial) {
        double const x = u(rng);
        for (int n = 0; n <= kMaxDepth; ++n) {
            double const y = iterated_log(iterated_exp(x, LogDepth(n)), LogDepth(n));
            EXPECT_NEAR(y, x, 1e-12*std::max(1.0, std::abs(x))) << "n=" << n << " x=" << x;
        }
    }
}

TEST(LogDepth, NegativeRejected) {
    EXPECT_THROW(LogDepth(-1), DomainError);
    EXPECT_EQ(LogDepth(2).value(), 2);
}

TEST(LogSequence, Values) {
    auto const s = log_sequence(std::exp(std::exp(1.0)), 3);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_NEAR(s[0], std::exp(1.0), 1e-14);
    EXPECT_NEAR(s[1], 1.0, 1e-15);
    EXPECT_NEAR(s[2], 0.0, 1e-15);
    EXPECT_THROW(log_sequence(0.5, 2), DomainError);
}

TEST(DomainThreshold, Values) {
    EXPECT_DOUBLE_EQ(DomainThreshold::make(0, Variant::zero).value, 0.0);
    EXPECT_DOUBLE_EQ(DomainThreshold::make(0, Variant::one).value, 1.0);
    EXPECT_DOUBLE_EQ(DomainThreshold::make(1, Variant::zero).value, 1.0);
    EXPECT_NEAR(DomainThreshold::make(2, Variant::one).value, 15.154262241479264190, 1e-13);
}

TEST(HardyWeight, Stack) {
    double const x = 5;
    EXPECT_DOUBLE_EQ(hardy_weight_stack(x, 2, LogDepth(0)), 0.0);
    EXPECT_DOUBLE_EQ(hardy_weight_stack(x, 3, LogDepth(0)), 1/(4*x*x));
    double const l1 = std::log(x), l2 = std::log(l1);
    EXPECT_NEAR(hardy_weight_stack(x, 1, LogDepth(2)),
                1/(4*x*x) + 1/(4*x*x*l1*l1) + 1/(4*x*x*l1*l1*l2*l2), 1e-16);
    EXPECT_THROW(hardy_weight_stack(0.5, 3, LogDepth(1)), DomainError);
}

TEST(Gamma, Values) {
    EXPECT_DOUBLE_EQ(loghardy::gamma(5), 24.0);
    EXPECT_DOUBLE_EQ(loghardy::gamma(1), 1.0);
    EXPECT_NEAR(loghardy::gamma(0.5), std::sqrt(std::numbers::pi), 1e-14);
    EXPECT_NEAR(loghardy::gamma(2.5), 0.75*std::sqrt(std::numbers::pi), 1e-14);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 10);
    for (int i = 0; i < 100; ++i) {
        double const x = u(rng);
        EXPECT_NEAR(loghardy::gamma(x), std::tgamma(x), 1e-13*std::tgamma(x));
    }
}

TEST(SphereArea, Values) {
    EXPECT_NEAR(sphere_area(2), 2*std::numbers::pi, 1e-14);
    EXPECT_NEAR(sphere_area(3), 4*std::numbers::pi, 1e-14);
    EXPECT_NEAR(sphere_area(5), 26.318945069571622984, 1e-13);
}

TEST(Degeneracy, MatchesBinomialFormula) {
    for (int d = 2; d <= 10; ++d) {
        for (int l = 0; l <= 20; ++l) {
            double const expected = binomial(d + l - 1, l) - binomial(d + l - 3, l - 2);
            EXPECT_EQ(double(degeneracy(d, l)), expected) << "d=" << d << " l=" << l;
        }
    }
}

TEST(Degeneracy, SpecialDimensions) {
    for (int l = 0; l <= 50; ++l) EXPECT_EQ(degeneracy(3, l), 2*l + 1);
    EXPECT_EQ(degeneracy(2, 0), 1);
    for (int l = 1; l <= 20; ++l) EXPECT_EQ(degeneracy(2, l), 2);
    EXPECT_EQ(degeneracy(4, 3), 16);
}
