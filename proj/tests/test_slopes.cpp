#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace hermlat;

TEST(Slopes, LineDegreeByHand) {
    const auto Q = support::field("q");
    EXPECT_NEAR(static_cast<double>(line_degree(Q, {2})), -std::log(2.0), 1e-15);
    const auto Qi = support::field("q_i");
    EXPECT_NEAR(static_cast<double>(line_degree(Qi, {3, 3})), -std::log(3.0), 1e-15);
    const auto R = support::field("q_sqrt2");
    EXPECT_NEAR(static_cast<double>(line_degree(R, {2, 0.5})), 0.0, 1e-15);
    EXPECT_THROW(line_degree(Qi, {1, 2}), invalid_input);  // conjugation
    EXPECT_THROW(line_degree(Q, {0}), invalid_input);
    EXPECT_THROW(line_degree(Q, {1, 1}), invalid_input);
}

TEST(Slopes, SortedDescendingAndDualNegates) {
    const auto Q = support::field("q");
    const diagonal_bundle D(Q, {{2}, {0.25}, {1}});
    const auto s = diagonal_slopes(D);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_NEAR(static_cast<double>(s[0]), std::log(4.0), 1e-15);
    EXPECT_NEAR(static_cast<double>(s[1]), 0.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(s[2]), -std::log(2.0), 1e-15);
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_slope_duality(D, k).holds);
}

TEST(Slopes, FromBundleRejectsNonDiagonal) {
    EXPECT_THROW(diagonal_bundle::from_bundle(support::bundle("qi_rank2")), invalid_input);
    const auto D = diagonal_bundle::from_bundle(support::bundle("z2_diag"));
    EXPECT_NEAR(static_cast<double>(D.line_scales()[0][0]), 2.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(D.line_scales()[1][0]), 0.5, 1e-15);
}

TEST(Slopes, BorekAndDualityOnRandomDiagonalBundles) {
    gaussian_source rng(31);
    for (const char* f : {"q", "q_i", "q_sqrt2", "q_sqrt_m3", "q_sqrt_m2"}) {
        const auto F = support::field(f);
        for (int t = 0; t < 10; ++t) {
            const auto D = random_diagonal_bundle(F, 1 + t % 3, rng);
            for (int k = 1; k <= D.rank(); ++k) {
                const auto b = check_borek(D, k);
                EXPECT_TRUE(b.certified);
                EXPECT_TRUE(b.holds) << f << " k=" << k << " " << b.sum;
                const auto s = check_slope_duality(D, k);
                EXPECT_LE(std::abs(s.sum), 1e-10);
            }
        }
    }
}

TEST(Slopes, BorekIsSharpForLinesOverQ) {
    // O·e over Q with ‖e‖ = t: μ_1 = log t = −deg, so Borek is an equality.
    const auto Q = support::field("q");
    const diagonal_bundle D(Q, {{3}});
    const auto b = check_borek(D, 1);
    EXPECT_NEAR(static_cast<double>(b.sum), 0.0, 1e-15);
}
