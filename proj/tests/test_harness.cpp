#include <cmath>

#include <gtest/gtest.h>

#include "loghardy/harness.hpp"
#include "loghardy/suites.hpp"

using namespace loghardy;

TEST(Harness, HardyPositivity) {
    auto const r = run_hardy_positivity({1, 2, 3, 4, 5}, {0, 1, 2});
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.cases.size(), 5u*3u*5u);
    EXPECT_GE(r.extremum, -1e-8);
}

TEST(Harness, TransformIdentity) {
    auto const r = run_transform_identity({1, 2, 3, 5}, {0, 1}, 1e-6);
    EXPECT_TRUE(r.passed());
    EXPECT_LE(r.extremum, 1e-6);
    for (auto const & c : r.cases) EXPECT_EQ(c.outcome, Outcome::pass) << c.label << " " << c.note;
}

TEST(Harness, TransformIdentityFailsOnImpossibleTolerance) {
    auto const r = run_transform_identity({3}, {1}, 1e-300);
    EXPECT_FALSE(r.passed());
}

TEST(Harness, ExistenceWithEscalation) {
    auto const r = run_existence_check(standard_existence_cases(), Numerics{}, 320);
    EXPECT_TRUE(r.passed());
    EXPECT_FALSE(r.inconclusive());
    for (auto const & c : r.cases) EXPECT_GE(c.value, 1.0) << c.label;
}

TEST(Harness, WeakWellInconclusiveWithoutEscalation) {
    std::vector<ExistenceCase> const weak{{PotentialSpec(SquareWell{0.01, 1, 2}), 0}};
    auto const r = run_existence_check(weak, Numerics{}, 20);
    EXPECT_TRUE(r.passed()); // inconclusive is not a failure
    EXPECT_TRUE(r.inconclusive());
    EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Harness, DepthLadderSweep) {
    auto const rows = run_bound_sweep(t41_depth_ladder());
    ASSERT_EQ(rows.size(), 7u);
    std::int64_t prev = 0;
    double prev_c = 0;
    for (auto const & r : rows) {
        EXPECT_TRUE(r.satisfied) << r.experiment_id;
        EXPECT_GE(r.count, prev);
        EXPECT_GT(r.params[0].second, prev_c);
        prev = r.count;
        prev_c = r.params[0].second;
    }
}

TEST(Harness, SweepSortsLadder) {
    auto s = t41_depth_ladder();
    s.values = {16, 1, 4};
    auto const rows = run_bound_sweep(s);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].params[0].second, 1.0);
    EXPECT_EQ(rows[2].params[0].second, 16.0);
    EXPECT_EQ(rows[0].experiment_id, "t41-0");
}

TEST(Harness, SweepDeterministic) {
    auto const a = run_bound_sweep(t42_well_ladder());
    auto const b = run_bound_sweep(t42_well_ladder());
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].count, b[i].count);
        EXPECT_EQ(a[i].bound.raw, b[i].bound.raw);
    }
}

TEST(Harness, CentralSweepChannels) {
    auto const rows = run_bound_sweep(t43_unit_well());
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].satisfied);
    EXPECT_GE(rows[0].channel_counts.size(), 2u);
    EXPECT_EQ(rows[0].bound.channels.size(), 2u);
}

TEST(Harness, SweepOverDimensions) {
    auto s = t43_unit_well();
    s.dims = {5, 3, 4};
    s.values = {2, 8};
    auto const rows = run_bound_sweep(s);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].d, 3);
    EXPECT_EQ(rows[5].d, 5);
    for (auto const & r : rows) EXPECT_TRUE(r.satisfied) << r.experiment_id;
}

TEST(Harness, EmptyLadderRejected) {
    auto s = t41_depth_ladder();
    s.values.clear();
    EXPECT_THROW(run_bound_sweep(s), ConfigError);
}

TEST(Harness, ConvergenceFree) {
    ConvergenceCase const c{OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::one), PotentialSpec(), std::nullopt};
    auto const r = run_convergence_study(c, {10, 20, 40}, {500, 1000, 2000});
    EXPECT_EQ(r.outcome, Outcome::pass);
    for (auto const & row : r.counts) for (auto k : row) EXPECT_EQ(k, 0);
    EXPECT_THROW(run_convergence_study(c, {10, 20}, {500, 1000, 2000}), ConfigError);
}

TEST(Harness, ConvergenceDeepWell) {
    for (auto const & nc : standard_convergence_cases()) {
        auto const r = run_convergence_study(nc.c, nc.windows, standard_grid_ladder());
        EXPECT_NE(r.outcome, Outcome::fail) << nc.name;
        EXPECT_TRUE(r.window_monotone) << nc.name;
        if ("deep well" == nc.name) {
            EXPECT_EQ(r.outcome, Outcome::pass);
            for (int from : r.grid_stable_from) EXPECT_LE(from, 2);
        }
    }
}
