#include <cmath>

#include <gtest/gtest.h>

#include "loghardy/forms.hpp"

using namespace loghardy;

namespace {
  double disc(double a, double b) { return std::abs(a - b)/std::max({std::abs(a), std::abs(b), 1e-300}); }
}

TEST(Bump, SmoothCompact) {
    Bump const u{1, 3, 2};
    EXPECT_EQ(u(1.0), 0.0);
    EXPECT_EQ(u(3.5), 0.0);
    EXPECT_NEAR(u(2.0), 2*std::exp(-1.0), 1e-15);
    auto const du = u(Dual::variable(2.0));
    EXPECT_NEAR(du.d, 0.0, 1e-15);
    // derivative against a central difference
    double const x = 1.7, h = 1e-6;
    EXPECT_NEAR(u(Dual::variable(x)).d, (u(x + h) - u(x - h))/(2*h), 1e-7);
}

TEST(Forms, FreeLineIdentity) {
    for (auto const & u : bump_suite(LogDepth(0))) {
        FormCase const c{1, LogDepth(0), 0, u, PotentialSpec()};
        double const a = quadratic_form_value(FormSide::original, c, 1e-12).value;
        double const b = quadratic_form_value(FormSide::reduced, c, 1e-12).value;
        EXPECT_LE(disc(a, b), 1e-8);
    }
}

TEST(Forms, DoubleSubstitutionWithWell) {
    for (auto const & u : bump_suite(LogDepth(1))) {
        FormCase const c{1, LogDepth(1), 0, u, suite_well(LogDepth(1))};
        double const a = quadratic_form_value(FormSide::original, c, 1e-12).value;
        double const b = quadratic_form_value(FormSide::reduced, c, 1e-12).value;
        EXPECT_LE(disc(a, b), 1e-6);
        double const s = quadratic_form_value(FormSide::single_step, c, 1e-12).value;
        EXPECT_LE(disc(a, s), 1e-6);
    }
}

TEST(Forms, FiveDimensions) {
    for (int l : {0, 1, 2}) {
        for (auto const & u : bump_suite(LogDepth(0))) {
            FormCase const c{5, LogDepth(0), l, u, suite_well(LogDepth(0))};
            double const a = quadratic_form_value(FormSide::original, c, 1e-12).value;
            double const b = quadratic_form_value(FormSide::reduced, c, 1e-12).value;
            EXPECT_LE(disc(a, b), 1e-6) << "l=" << l;
        }
    }
}

TEST(Forms, TwoDimensionsNoHardyTerm) {
    // d = 2, n = 0: the weight vanishes and the form with V = 0 is the kinetic energy
    for (auto const & u : bump_suite(LogDepth(0))) {
        FormCase const c{2, LogDepth(0), 0, u, PotentialSpec()};
        double const form = quadratic_form_value(FormSide::original, c, 1e-12).value;
        double const kin = kinetic_energy(c, 1e-12).value;
        EXPECT_NEAR(form/kin, 1.0, 1e-12);
    }
}

TEST(Forms, AffineInPotentialDepth) {
    Bump const u{1.1, 3.5, 1};
    auto const value = [&u](double depth) {
        PotentialSpec const V = depth > 0 ? PotentialSpec(SquareWell{depth, 1.5, 2.5}) : PotentialSpec();
        return quadratic_form_value(FormSide::reduced, FormCase{3, LogDepth(1), 0, u, V}, 1e-13).value;
    };
    double const f0 = value(0), f1 = value(1);
    for (double c : {0.5, 3.0, 10.0}) EXPECT_NEAR(value(c) - f0, c*(f1 - f0), 1e-9*std::abs(c*(f1 - f0)));
}

TEST(Forms, DomainChecks) {
    FormCase c{3, LogDepth(1), 0, Bump{0.5, 2, 1}, PotentialSpec()};
    EXPECT_THROW(quadratic_form_value(FormSide::original, c, 1e-10), DomainError);
    c.n = LogDepth(0);
    EXPECT_THROW(quadratic_form_value(FormSide::single_step, c, 1e-10), DomainError);
    c.d = 2;
    c.u = Bump{0.2, 0.8, 1};
    EXPECT_THROW(quadratic_form_value(FormSide::single_step, c, 1e-10), DomainError);
    c.d = 1;
    c.l = 1;
    EXPECT_THROW(quadratic_form_value(FormSide::original, c, 1e-10), DomainError);
}

TEST(Forms, BumpSuitePlacement) {
    for (int n = 0; n <= 2; ++n) {
        double const t = iterated_exp(0, LogDepth(n));
        auto const suite = bump_suite(LogDepth(n));
        EXPECT_EQ(suite.size(), 5u);
        for (auto const & u : suite) {
            EXPECT_GT(u.lo, t);
            EXPECT_LT(u.lo, u.hi);
        }
    }
}
