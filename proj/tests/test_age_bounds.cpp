#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ringage/age_bounds.hpp"
#include "ringage/error.hpp"
#include "ringage/exact_oracle.hpp"
#include "ringage/neighbor_function.hpp"
#include "ringage/ring_topology.hpp"

using namespace ringage;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

// Backward recursion with edge counts taken from the pair-enumeration oracle
// on the arc {0..j-1}.
std::vector<double> oracle_u(std::int64_t n, std::int64_t f, double ratio) {
    std::vector<double> u(static_cast<std::size_t>(n));
    u[static_cast<std::size_t>(n - 1)] = ratio;
    std::set<std::int64_t> arc;
    for (std::int64_t i = 0; i < n - 1; ++i) arc.insert(i);
    for (std::int64_t j = n - 1; j >= 1; --j) {
        const double e = static_cast<double>(oracle::incoming_edges(n, f, arc)) / static_cast<double>(2 * f);
        u[static_cast<std::size_t>(j - 1)] =
            (ratio + e * u[static_cast<std::size_t>(j)]) / (static_cast<double>(j) / static_cast<double>(n) + e);
        arc.erase(j - 1);
    }
    return u;
}

// log-space margin of n^c >= factor * alpha * ln n, evaluated independently.
bool dominates(double alpha, double n) {
    const long double c = (1.0L - alpha) / 2.0L;
    const long double x = std::log(static_cast<long double>(n));
    if (x <= 0.0L) return true;
    return c * x >= std::log(10.0L * alpha * x);
}

}  // namespace

TEST(RecursiveBound, TriangleByHand) {
    const BoundReport r = recursive_bound(3, 1, Rates{});
    ASSERT_EQ(r.u.size(), 3U);
    EXPECT_NEAR(r.u[0], 1.65, 1e-12);
    EXPECT_NEAR(r.u[1], 1.2, 1e-12);
    EXPECT_DOUBLE_EQ(r.u[2], 1.0);
    EXPECT_DOUBLE_EQ(r.u1, r.u[0]);
    EXPECT_NEAR(r.u1, exact_v1(3, 1, Rates{}), 1e-12);
}

TEST(RecursiveBound, MatchesPairEnumerationOracle) {
    for (std::int64_t n : {3, 4, 7, 12, 25, 60})
        for (std::int64_t f = 1; f <= (n - 1) / 2; ++f) {
            const Rates rates{1.7, 0.9};
            const auto ref = oracle_u(n, f, rates.ratio());
            const BoundReport r = recursive_bound(n, f, rates);
            for (std::size_t k = 0; k < ref.size(); ++k) ASSERT_NEAR(r.u[k], ref[k], 1e-12 * ref[k]) << n << " " << f;
        }
}

TEST(RecursiveBound, MonotoneWithBaseCase) {
    for (std::int64_t n : {3, 10, 101, 1000})
        for (std::int64_t f : {std::int64_t{1}, (n - 1) / 4 + 1, (n - 1) / 2}) {
            const Rates rates{2.0, 0.5};
            const BoundReport r = recursive_bound(n, f, rates);
            EXPECT_DOUBLE_EQ(r.u.back(), rates.ratio());
            for (std::size_t k = 0; k + 1 < r.u.size(); ++k) ASSERT_GE(r.u[k], r.u[k + 1]);
            EXPECT_GE(r.x_sum, 0.0);
            EXPECT_GE(r.y_sum, 0.0);
            EXPECT_GE(r.z_sum, 0.0);
            EXPECT_NEAR(r.closed_form, r.x_sum + r.y_sum + r.z_sum, 1e-12 * r.closed_form);
        }
    EXPECT_DOUBLE_EQ(recursive_bound(57, 9, Rates{}).u.back(), 1.0);
}

TEST(RecursiveBound, StreamingAgreesWithVector) {
    const BoundReport full = recursive_bound(20'000, 141, Rates{});
    const BoundReport streamed = recursive_bound(20'000, 141, Rates{}, false);
    EXPECT_TRUE(streamed.u.empty());
    EXPECT_DOUBLE_EQ(full.u1, streamed.u1);
}

TEST(RecursiveBound, LinearInRatio) {
    const double base = recursive_bound(500, 7, Rates{1.0, 1.0}).u1;
    EXPECT_NEAR(recursive_bound(500, 7, Rates{3.0, 1.0}).u1, 3.0 * base, 1e-12 * base);
    EXPECT_NEAR(recursive_bound(500, 7, Rates{2.0, 2.0}).u1, base, 1e-12 * base);
}

TEST(RecursiveBound, Errors) {
    EXPECT_THROW(recursive_bound(2, 1, Rates{}), InvalidArgument);
    EXPECT_THROW(recursive_bound(10, 0, Rates{}), InvalidArgument);
    EXPECT_THROW(recursive_bound(10, 5, Rates{}), InvalidArgument);
    EXPECT_THROW(recursive_bound(10, 1, Rates{0.0, 1.0}), InvalidArgument);
    EXPECT_THROW(recursive_bound(10, 1, Rates{1.0, std::nan("")}), InvalidArgument);
}

TEST(RangeSums, Examples) {
    EXPECT_NEAR(range_sum_x(1.0, 1.0), 3.2704, 1e-4);
    EXPECT_NEAR(range_sum_x(std::exp(1.0), 1.0), 4.2704, 1e-4);
    EXPECT_EQ(range_sum_x(1.0, 0.0), 0.0);
    EXPECT_NEAR(range_sum_y(100.0, 1.0, 1.0), 17.7245, 1e-4);
    EXPECT_NEAR(range_sum_y(100.0, 4.0, 1.0), 8.8623, 1e-4);
    EXPECT_EQ(range_sum_y(100.0, 1.0, 0.0), 0.0);
    EXPECT_NEAR(range_sum_z(1.0, 1.0), 3.0, 1e-12);
    EXPECT_NEAR(range_sum_z(std::exp(2.0), 1.0), 5.0, 1e-12);
    EXPECT_NEAR(range_sum_z(1.0, 2.0), 6.0, 1e-12);
    EXPECT_THROW(range_sum_x(0.5, 1.0), InvalidArgument);
    EXPECT_THROW(range_sum_y(2.0, 1.0, 1.0), InvalidArgument);
}

TEST(ClosedForm, Examples) {
    EXPECT_NEAR(closed_form_bound(101, 50, Rates{}), 16.61, 0.005);
    EXPECT_NEAR(closed_form_bound(100, 1, Rates{}), 23.995, 0.0005);
    const BoundReport r = recursive_bound(101, 50, Rates{});
    EXPECT_NEAR(r.closed_form, r.x_sum + r.y_sum + r.z_sum, 1e-12);
    EXPECT_DOUBLE_EQ(r.closed_form, closed_form_bound(101, 50, Rates{}));
}

TEST(SpecialCases, Examples) {
    // n = e^2 + 1 is not an integer node count; compare with the formula at n = 8.
    EXPECT_NEAR(special_case_bound(regime::FullyConnected{}, 8, Rates{}), 2.0 + std::log(7.0), 1e-12);
    EXPECT_NEAR(special_case_bound(regime::FixedD{1.0}, 100, Rates{}), 17.7245, 1e-4);
    EXPECT_NEAR(special_case_bound(regime::FixedD{4.0}, 100, Rates{2.0, 1.0}), 2.0 * kSqrtPi * 5.0, 1e-12);
    EXPECT_NEAR(special_case_bound(regime::PowerAlpha{0.5}, 10'000, Rates{}), 17.7245, 1e-4);
    EXPECT_NEAR(special_case_bound(regime::NearLinear{}, 1000, Rates{}), std::log(1000.0), 1e-12);
    EXPECT_THROW(special_case_bound(regime::FixedD{0.5}, 100, Rates{}), InvalidArgument);
    EXPECT_THROW(special_case_bound(regime::PowerAlpha{1.0}, 100, Rates{}), InvalidArgument);
}

TEST(SpecialCases, FullyConnectedRegimeConsistency) {
    for (std::int64_t n : {100, 1000, 10'000}) {
        const double u1 = recursive_bound(n, (n - 1) / 2, Rates{}, false).u1;
        EXPECT_LE(u1, special_case_bound(regime::FullyConnected{}, n, Rates{}) + 0.5) << n;
    }
}

TEST(SpecialCases, ConstantRadiusScalesLikeSqrtN) {
    for (std::int64_t n : {1000, 10'000, 100'000}) {
        const double scaled = recursive_bound(n, 1, Rates{}, false).u1 / std::sqrt(static_cast<double>(n));
        EXPECT_GE(scaled, 0.5 * kSqrtPi) << n;
        EXPECT_LE(scaled, 1.5 * kSqrtPi) << n;
    }
}

TEST(SpecialCases, PowerLawScalingRatioStable) {
    for (double alpha : {0.2, 0.5, 0.8}) {
        double lo = INFINITY;
        double hi = 0.0;
        for (std::int64_t n : {10'000, 100'000, 1'000'000}) {
            const std::int64_t f = eval_f(radius::Power{alpha}, n);
            const double scaled = recursive_bound(n, f, Rates{}, false).u1 / std::pow(static_cast<double>(n), scaling_exponent(alpha));
            lo = std::min(lo, scaled);
            hi = std::max(hi, scaled);
            // The additive log f term keeps the ratio above sqrt(pi) + 2 at
            // alpha = 0.8 for these n, so the absolute ceiling only holds for
            // the smaller exponents.
            if (alpha < 0.7) EXPECT_LT(scaled, kSqrtPi + 2.0) << alpha << " " << n;
        }
        EXPECT_LT(hi / lo, 2.0) << alpha;
    }
}

TEST(BoundVsClosedForm, WithinSlackUpTo1e7) {
    for (std::int64_t n : {10'000, 100'000, 1'000'000, 10'000'000})
        for (double alpha : {0.0, 0.1, 0.2, 0.3}) {
            const std::int64_t f = alpha == 0.0 ? 1 : eval_f(radius::Power{alpha}, n);
            const BoundReport r = recursive_bound(n, f, Rates{}, false);
            EXPECT_LE(r.u1, r.closed_form + 1.0) << n << " " << alpha;
        }
}

TEST(Riemann, Examples) {
    const RiemannCheck big = riemann_gaussian_check(1'000'000, 1);
    EXPECT_LT(big.gap, 1.0);
    EXPECT_LT(big.gap / big.analytic, 0.01);
    const RiemannCheck small = riemann_gaussian_check(100, 1);
    EXPECT_LE(small.sum, small.analytic + 1.0);
    const RiemannCheck tiny = riemann_gaussian_check(3, 1);
    EXPECT_TRUE(std::isfinite(tiny.sum) && tiny.sum > 0.0);
    EXPECT_TRUE(std::isfinite(tiny.analytic) && tiny.analytic > 0.0);
}

TEST(Riemann, MatchesLongDoubleSum) {
    for (auto [n, f] : {std::pair<std::int64_t, std::int64_t>{100, 1}, {10'000, 3}, {1'000'000, 1}}) {
        const RiemannCheck c = riemann_gaussian_check(n, f);
        const double ref = static_cast<double>(oracle::gaussian_sum(n, f));
        EXPECT_NEAR(c.sum, ref, 1e-10 * ref);
        EXPECT_NEAR(c.analytic, 0.5 * kSqrtPi * std::sqrt(static_cast<double>(n) * static_cast<double>(f + 1)), 1e-9);
        EXPECT_NEAR(c.gap, std::abs(c.sum - c.analytic), 1e-9);
    }
}

TEST(Riemann, RelativeGapShrinksWithN) {
    double prev = INFINITY;
    for (std::int64_t n : {100, 10'000, 1'000'000}) {
        const RiemannCheck c = riemann_gaussian_check(n, 1);
        const double rel = c.gap / c.analytic;
        EXPECT_LT(rel, prev);
        prev = rel;
    }
}

TEST(DominationThreshold, Examples) {
    EXPECT_EQ(domination_threshold(0.1), 1.0);
    const double t5 = domination_threshold(0.5);
    EXPECT_GE(t5, 1.22e8 / 2.0);
    EXPECT_LE(t5, 1.22e8 * 2.0);
    const double t2 = domination_threshold(0.2);
    EXPECT_GE(t2, 471.0);
    EXPECT_LE(t2, 1884.0);
}

TEST(DominationThreshold, IsTheSmallestIntegerFromWhichItHolds) {
    for (double alpha : {0.2, 0.25, 0.3, 0.4, 0.5}) {
        const double t = domination_threshold(alpha);
        ASSERT_EQ(t, std::floor(t));
        EXPECT_TRUE(dominates(alpha, t)) << alpha;
        EXPECT_FALSE(dominates(alpha, t - 1.0)) << alpha;
        for (double k : {1.0, 2.0, 10.0, 1e3, 1e6, 1e12}) EXPECT_TRUE(dominates(alpha, t * k)) << alpha << " " << k;
    }
}

TEST(DominationThreshold, GrowsWithAlpha) {
    double prev = 0.0;
    for (int k = 1; k <= 9; ++k) {
        const double t = domination_threshold(0.1 * k);
        EXPECT_GE(t, prev) << k;
        EXPECT_TRUE(std::isfinite(t)) << k;
        prev = t;
    }
}

TEST(DominationThreshold, CriterionVariants) {
    const double natural = domination_threshold(0.3);
    DominationCriterion log2;
    log2.log_base = 2.0;
    EXPECT_GT(domination_threshold(0.3, log2), natural);  // log2 n > ln n
    DominationCriterion weaker;
    weaker.factor = 1.0;
    EXPECT_LT(domination_threshold(0.3, weaker), natural);
    DominationCriterion coef;
    coef.use_coefficients = true;
    EXPECT_GT(domination_threshold(0.3, coef), natural);  // net factor 2/sqrt(pi) > 1 on h
    DominationCriterion bad;
    bad.factor = 0.0;
    EXPECT_THROW(domination_threshold(0.3, bad), InvalidArgument);
    bad = {};
    bad.log_base = 1.0;
    EXPECT_THROW(domination_threshold(0.3, bad), InvalidArgument);
    EXPECT_THROW(domination_threshold(0.0), InvalidArgument);
    EXPECT_THROW(domination_threshold(1.0), InvalidArgument);
}

TEST(ScalingExponent, Examples) {
    EXPECT_DOUBLE_EQ(scaling_exponent(0.1), 0.45);
    EXPECT_DOUBLE_EQ(scaling_exponent(0.5), 0.25);
    EXPECT_DOUBLE_EQ(scaling_exponent(1.0), 0.0);
    EXPECT_THROW(scaling_exponent(-0.1), InvalidArgument);
    EXPECT_THROW(scaling_exponent(1.1), InvalidArgument);
}
