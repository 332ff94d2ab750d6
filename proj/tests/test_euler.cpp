#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "eulerdiv/bounds.hpp"
#include "eulerdiv/brownian.hpp"
#include "eulerdiv/euler.hpp"
#include "eulerdiv/models.hpp"

using namespace eulerdiv;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> random_signs(std::size_t count, std::mt19937_64& gen) {
    std::vector<int> signs(count);
    for (int& s : signs) s = (gen() & 1u) ? 1 : -1;
    return signs;
}

} // namespace

TEST(EulerStep, DeterministicCubicStep) {
    // y = N, dt = T/N with T = 1, N = 10: N - N^2.
    const auto spec = catalog("cubic_additive", {{"sigma", 3.0}}).spec;
    EXPECT_EQ(euler_step(spec, 10.0, 0.1, 0.0), -90.0);
}

TEST(EulerStep, FixedPointAtZero) {
    const auto spec = catalog("ohta_kimura").spec;
    EXPECT_EQ(euler_step(spec, 0.0, 0.1, 1.7), 0.0);
    EXPECT_EQ(euler_step(catalog("ginzburg_landau").spec, 0.0, 0.5, -2.0), 0.0);
}

TEST(EulerStep, InfinityMinusInfinityGivesNaN) {
    const auto spec = catalog("cubic_additive").spec;
    EXPECT_TRUE(std::isnan(euler_step(spec, kInf, 0.1, 0.3)));
    EXPECT_TRUE(std::isnan(euler_step(spec, -kInf, 0.1, 0.3)));
    EXPECT_TRUE(std::isnan(euler_step(spec, std::nan(""), 0.1, 0.3)));
}

TEST(EulerPath, PowerDriftZeroNoiseStaysAtZero) {
    const auto spec = catalog("power_drift").spec;
    const auto traj = euler_path(spec, BrownianGrid(10.0, std::vector<double>(25, 0.0)));
    ASSERT_EQ(traj.values.size(), 26u);
    for (double y : traj.values) EXPECT_EQ(y, 0.0);
    EXPECT_FALSE(traj.exploded());
}

TEST(EulerPath, HorizonMismatchRejected) {
    const auto spec = catalog("power_drift").spec;
    EXPECT_THROW(euler_path(spec, BrownianGrid(1.0, {0.0})), std::invalid_argument);
    EXPECT_THROW(euler_terminal(spec, BrownianGrid(1.0, {0.0})), std::invalid_argument);
}

TEST(EulerPath, TrajectoryInvariants) {
    const auto spec = catalog("stratonovich_gl", {{"sigma", 7.0}}).spec;
    int exploded = 0;
    for (std::uint64_t run = 0; run < 3000; ++run) {
        const auto grid = sample_increments(31, run, 1000, spec.horizon);
        const auto traj = euler_path(spec, grid);
        ASSERT_EQ(traj.values.front(), spec.x0);
        EXPECT_EQ(euler_terminal(spec, grid), traj.terminal()) << run;
        if (!traj.exploded()) {
            for (double y : traj.values) ASSERT_TRUE(std::isfinite(y));
            continue;
        }
        ++exploded;
        const std::size_t k = *traj.explosion_index;
        for (std::size_t j = 0; j < k; ++j) ASSERT_TRUE(std::isfinite(traj.values[j]));
        ASSERT_FALSE(std::isfinite(traj.values[k]));
        bool seen_nan = false;
        for (std::size_t j = k; j < traj.values.size(); ++j) {
            ASSERT_FALSE(std::isfinite(traj.values[j]));
            if (seen_nan) ASSERT_TRUE(std::isnan(traj.values[j]));
            seen_nan = seen_nan || std::isnan(traj.values[j]);
        }
    }
    // Whether any run explodes here is not asserted; the acceptance suite does
    // that with 10^5 runs.
    SUCCEED() << exploded << " exploded runs";
}

TEST(EulerPath, InfinityFollowedByCubicStepIsNaN) {
    SdeSpec spec = catalog("cubic_additive").spec;
    spec.x0 = kInf;
    const auto traj = euler_path(spec, BrownianGrid(1.0, {0.1, 0.2}));
    EXPECT_EQ(traj.explosion_index, 0u);
    EXPECT_TRUE(std::isnan(traj.values[1]));
    EXPECT_TRUE(std::isnan(traj.values[2]));
}

TEST(EulerPath, ForcedEventN8GrowsThenExplodes) {
    const auto spec = catalog("cubic_additive", {{"sigma", 1.0}}).spec;
    const std::size_t n = 8;
    const double r = r_simple(n, 1.0);
    const std::vector<int> signs(n - 1, 1);
    const auto grid = force_event_increments(n, 1.0, r, 1.0, signs, DivergenceEvent::additive_cubic);
    const auto traj = euler_path(spec, grid);
    for (std::size_t k = 1; k <= n && std::isfinite(traj.values[k]); ++k) {
        EXPECT_GE(std::log(std::fabs(traj.values[k])), std::ldexp(1.0, static_cast<int>(k) - 1) * std::log(r)) << k;
    }
    EXPECT_TRUE(traj.exploded());
}

TEST(EulerPath, ForcedEventDoubleExponentialGrowth) {
    std::mt19937_64 gen(8);
    const auto spec = catalog("cubic_additive", {{"sigma", 1.0}}).spec;
    for (std::size_t n : {4u, 8u, 16u, 32u}) {
        const double r = r_simple(n, 1.0);
        for (double magnitude : {0.0, 0.25, 1.0}) {
            for (double sign0 : {1.0, -1.0}) {
                const auto signs = random_signs(n - 1, gen);
                const auto grid =
                    force_event_increments(n, 1.0, sign0 * r, magnitude, signs, DivergenceEvent::additive_cubic);
                ASSERT_TRUE(in_additive_cubic_event(grid, r));
                const auto traj = euler_path(spec, grid);
                for (std::size_t k = 1; k <= n && std::isfinite(traj.values[k]); ++k) {
                    ASSERT_GE(std::log(std::fabs(traj.values[k])),
                              std::ldexp(1.0, static_cast<int>(k) - 1) * std::log(r))
                        << "N=" << n << " k=" << k;
                }
            }
        }
    }
}

TEST(EulerPath, GeneralEventGrowthForEveryCertifiedModel) {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const std::string name : {"cubic_additive", "ginzburg_landau", "verhulst", "feller_logistic", "ohta_kimura"}) {
        const auto entry = catalog(name);
        const auto cert = induction_certificate(*entry.certificate);
        const auto km = k_and_mu(entry.spec);
        const double T = entry.spec.horizon;
        for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
            const double r = r_general(n, T, cert);
            const double threshold = km.K * (r + km.K);
            for (int trial = 0; trial < 20; ++trial) {
                const double dt = T / static_cast<double>(n);
                const double sign0 = unit(gen) < 0.5 ? -1.0 : 1.0;
                const auto grid = force_event_increments(n, T, sign0 * threshold * (1.0 + unit(gen)),
                                                         dt * (1.0 + unit(gen)), random_signs(n - 1, gen),
                                                         DivergenceEvent::general);
                ASSERT_TRUE(in_general_event(grid, threshold));
                const auto traj = euler_path(entry.spec, grid);
                for (std::size_t k = 1; k <= n && std::isfinite(traj.values[k]); ++k) {
                    ASSERT_GE(std::log2(std::fabs(traj.values[k])), certified_growth_floor(n, k, r, cert.alpha))
                        << name << " N=" << n << " k=" << k;
                }
            }
        }
    }
}

TEST(Threshold, Formula) {
    EXPECT_EQ(deterministic_explosion_threshold(2, 1.0), 2.0);
    EXPECT_EQ(deterministic_explosion_threshold(7, 14.0), 1.0);
    EXPECT_THROW(deterministic_explosion_threshold(0, 1.0), std::invalid_argument);
}

TEST(Threshold, StableBelowExplodesAbove) {
    for (std::size_t n : {8u, 64u, 512u}) {
        const double threshold = deterministic_explosion_threshold(n, 1.0);
        const BrownianGrid quiet(1.0, std::vector<double>(n, 0.0));

        const auto below = euler_path(catalog("cubic_additive", {{"sigma", 0.0}, {"x0", 0.99 * threshold}}).spec, quiet);
        for (std::size_t k = 1; k <= n; ++k) {
            ASSERT_LE(std::fabs(below.values[k]), std::fabs(below.values[k - 1])) << "N=" << n << " k=" << k;
        }

        const auto above = euler_path(catalog("cubic_additive", {{"sigma", 0.0}, {"x0", 1.01 * threshold}}).spec, quiet);
        EXPECT_TRUE(above.exploded() || std::fabs(above.terminal()) > 1e100) << "N=" << n;
    }
}
