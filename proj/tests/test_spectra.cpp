#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "loghardy/spectra.hpp"

using namespace loghardy;

namespace {
  std::int64_t dense_negative_count(TridiagonalOperator const & T) {
      auto const m = Eigen::Index(T.size());
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
          A(i, i) = T.diagonal[i];
          if (i + 1 < m) A(i, i + 1) = A(i + 1, i) = T.off_diagonal[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
      return (es.eigenvalues().array() < 0).count();
  }

  TridiagonalOperator random_tridiagonal(std::mt19937_64 & rng, int m) {
      std::normal_distribution<double> g(0, 1);
      TridiagonalOperator T;
      for (int i = 0; i < m; ++i) T.diagonal.push_back(g(rng));
      for (int i = 0; i + 1 < m; ++i) T.off_diagonal.push_back(g(rng));
      return T;
  }
}

TEST(Inertia, MatchesDenseEigensolver) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> size(1, 200);
    for (int trial = 0; trial < 100; ++trial) {
        auto const T = random_tridiagonal(rng, size(rng));
        auto const c = inertia_negative_count(T);
        EXPECT_FALSE(c.ambiguous());
        EXPECT_EQ(c.low, dense_negative_count(T)) << "trial " << trial;
    }
}

TEST(Inertia, Shifted) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto T = random_tridiagonal(rng, 60);
        double const shift = 0.37*trial - 3;
        auto const c = inertia_negative_count(T, shift);
        for (auto & a : T.diagonal) a -= shift;
        EXPECT_EQ(c.low, dense_negative_count(T));
    }
}

TEST(Inertia, ZeroPivots) {
    TridiagonalOperator single{{0.0}, {}};
    auto const c = inertia_negative_count(single);
    EXPECT_EQ(c.low, 0);
    EXPECT_EQ(c.high, 1);
    EXPECT_TRUE(c.ambiguous());
    // eigenvalues +-1: the zero pivot is resolved either way
    TridiagonalOperator swap{{0.0, 0.0}, {1.0}};
    auto const s = inertia_negative_count(swap);
    EXPECT_EQ(s.low, 1);
    EXPECT_EQ(s.high, 1);
    TridiagonalOperator bad{{1.0, 2.0}, {}};
    EXPECT_THROW(inertia_negative_count(bad), DomainError);
    EXPECT_EQ(inertia_negative_count(TridiagonalOperator{}).high, 0);
}

TEST(Eigenvalues, FreeLaplacianToeplitz) {
    int const m = 200;
    Grid const grid(0, 1, m);
    auto const T = assemble([](double) { return 0.0; }, grid);
    double const h = grid.h();
    auto const ev = lowest_eigenvalues(T, 20, 1e-12);
    for (int j = 1; j <= 20; ++j) {
        double const exact = 2/(h*h)*(1 - std::cos(j*std::numbers::pi/(m + 1)));
        EXPECT_NEAR(ev[j - 1], exact, 1e-10) << "j=" << j;
    }
    EXPECT_THROW(lowest_eigenvalues(T, 0, 1e-10), DomainError);
}

TEST(Eigenvalues, PoeschlTeller) {
    // -d^2/ds^2 - 2 sech^2 s has the single bound state -1
    Grid const grid(-20, 20, 16000);
    auto const T = assemble([](double s) { return -2/std::pow(std::cosh(s), 2); }, grid);
    EXPECT_EQ(inertia_negative_count(T).low, 1);
    auto const ev = lowest_eigenvalues(T, 1, 1e-12);
    EXPECT_NEAR(ev[0], -1.0, 1e-3);
}

TEST(Grid, Points) {
    Grid const g(0, 1, 9);
    EXPECT_DOUBLE_EQ(g.h(), 0.1);
    EXPECT_DOUBLE_EQ(g.point(0), 0.1);
    EXPECT_DOUBLE_EQ(g.point(8), 0.9);
    EXPECT_THROW(Grid(1, 0, 5), DomainError);
    EXPECT_THROW(Grid(0, 1, 1), DomainError);
}

TEST(Count, LowerEnd) {
    EXPECT_TRUE(std::isinf(transformed_lower_end(OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::zero))));
    EXPECT_EQ(transformed_lower_end(OperatorSpec::for_theorem(Theorem::t41, 1, 2, Variant::one)), 0.0);
    EXPECT_EQ(transformed_lower_end(OperatorSpec::for_theorem(Theorem::t42, 3, 0, Variant::zero)), 1.0);
    EXPECT_NEAR(transformed_lower_end(OperatorSpec::for_theorem(Theorem::t42, 3, 1, Variant::one)), std::exp(1.0), 1e-15);
    auto const g = count_grid(OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::zero), 20, 100);
    EXPECT_EQ(g.s_min, -20.0);
    EXPECT_EQ(g.s_max, 20.0);
}

TEST(Count, UnitWellVariantOne) {
    auto const op = OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::one);
    Numerics num;
    num.refinements = 1;
    auto const c = count_negative(op, PotentialSpec(SquareWell{1, 1, 2}), std::nullopt, num);
    ASSERT_EQ(c.trail.size(), 2u);
    EXPECT_EQ(c.trail[0].count.low, 0);
    EXPECT_EQ(c.trail[1].count.low, 0);
    EXPECT_EQ(c.trail[1].L, 40.0);
    EXPECT_EQ(c.trail[1].m, 8000);
}

TEST(Count, FreeOperatorHasNone) {
    for (int n = 0; n <= 2; ++n) {
        for (auto v : {Variant::zero, Variant::one}) {
            auto const op = OperatorSpec::for_theorem(Theorem::t41, 1, n, v);
            EXPECT_EQ(count_negative(op, PotentialSpec(), std::nullopt, Numerics{}).negative_count.high, 0);
        }
    }
    auto const op3 = OperatorSpec::for_theorem(Theorem::t43, 3, 0, Variant::zero);
    EXPECT_EQ(total_central_count(op3, PotentialSpec(), Numerics{}).total.high, 0);
}

TEST(Count, WindowMonotone) {
    // Dirichlet truncation: a larger window never loses eigenvalues
    auto const op = OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::zero);
    PotentialSpec const V(SquareWell{0.3, 1, 2});
    std::int64_t prev = 0;
    for (double L : {5.0, 10.0, 20.0, 40.0, 80.0, 160.0}) {
        Numerics num;
        num.L = L;
        num.m = int(200*L);
        auto const c = count_negative(op, V, std::nullopt, num).negative_count.low;
        EXPECT_GE(c, prev) << "L=" << L;
        prev = c;
    }
    EXPECT_GE(prev, 1);
}

TEST(Count, DeepWellMatchesSemiclassics) {
    // -u'' - c u = 0 on [1, 2] with Dirichlet-like confinement: about sqrt(c)/pi states
    auto const op = OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::one);
    Numerics num;
    num.m = 20000;
    auto const c = count_negative(op, PotentialSpec(SquareWell{10000, 1, 2}), std::nullopt, num);
    EXPECT_NEAR(double(c.negative_count.low), 100/std::numbers::pi, 2.0);
}

TEST(Count, CentralChannels) {
    auto const op = OperatorSpec::for_theorem(Theorem::t43, 3, 0, Variant::one);
    auto const c = total_central_count(op, PotentialSpec(SquareWell{50, 1, 2}), Numerics{});
    std::int64_t total = 0;
    for (auto const & ch : c.channels) {
        EXPECT_EQ(ch.degeneracy, 2*ch.l + 1);
        total += ch.degeneracy*ch.count.low;
    }
    EXPECT_EQ(total, c.total.low);
    EXPECT_EQ(c.channels.back().count.high, 0);
    // channel counts are non-increasing in l
    for (std::size_t i = 1; i < c.channels.size(); ++i) {
        EXPECT_LE(c.channels[i].count.low, c.channels[i - 1].count.low);
    }
}

TEST(Count, InvalidNumerics) {
    auto const op = OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::one);
    Numerics num;
    num.L = -1;
    EXPECT_THROW(count_negative(op, PotentialSpec(), std::nullopt, num), DomainError);
    EXPECT_THROW(count_negative(op, PotentialSpec(), 1, Numerics{}), DomainError);
}

TEST(Count, OverflowReported) {
    // an unbounded tail cannot be followed through three exponentials
    auto const op = OperatorSpec::for_theorem(Theorem::t41, 1, 2, Variant::one);
    EXPECT_THROW(count_negative(op, PotentialSpec(InverseSquare{1, 1}), std::nullopt, Numerics{}), OverflowError);
}
