#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace ringage {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Source self-update rate and total dissemination rate. Both strictly
/// positive and finite.
struct Rates {
    double lambda_e = 1.0;
    double lambda = 1.0;

    void validate() const;
    double ratio() const { return lambda_e / lambda; }
};

/// Recursive upper bound on the age of contiguous sets, together with the
/// per-range closed forms for the same (n, f, rates).
struct BoundReport {
    std::int64_t n = 0;
    std::int64_t f = 0;
    double ratio = 0.0;
    /// u[j-1] bounds the age of any connected j-set. Empty when the
    /// recursion was streamed.
    std::vector<double> u;
    double u1 = 0.0;
    double x_sum = 0.0;
    double y_sum = 0.0;
    double z_sum = 0.0;
    double closed_form = 0.0;
};

/// Backward recursion from u_n = lambda_e/lambda down to u_1:
///   u_j = (r + (E_j / 2f) u_{j+1}) / (j/n + E_j / 2f),
/// where E_j is the contiguous-set incoming edge count. With keep_vector
/// false only u_1 is retained (O(1) memory, for n up to 1e8 and beyond).
BoundReport recursive_bound(std::int64_t n, std::int64_t f, const Rates& rates, bool keep_vector = true);

/// r (2 + ln 2 + ln f + gamma): harmonic-sum bound for sets of size <= f.
double range_sum_x(double f, double ratio);
/// r sqrt(pi) sqrt(n) / sqrt(f): Gaussian-integral bound for the middle range.
double range_sum_y(double n, double f, double ratio);
/// r (3 + ln f): bound for sets of size >= n - f.
double range_sum_z(double f, double ratio);
/// x + y + z = r (5 + ln 2 + 2 ln f + gamma) + r sqrt(pi) sqrt(n/f).
double closed_form_bound(std::int64_t n, std::int64_t f, const Rates& rates);

namespace regime {
struct FullyConnected {};
struct FixedD {
    double d;
};
struct PowerAlpha {
    double alpha;
};
/// f(n) >= n / ln^2 n; represented by ln n.
struct NearLinear {};
}  // namespace regime

using Regime = std::variant<regime::FullyConnected, regime::FixedD, regime::PowerAlpha, regime::NearLinear>;

/// Leading-order bound for the named connectivity regime.
double special_case_bound(const Regime& regime, std::int64_t n, const Rates& rates);

struct RiemannCheck {
    double sum = 0.0;
    double analytic = 0.0;
    double gap = 0.0;  // |sum - analytic|
};

/// sum_{i=1}^{n} exp(-i^2 / (n (f+1))) against (sqrt(pi)/2) sqrt(n (f+1)).
RiemannCheck riemann_gaussian_check(std::int64_t n, std::int64_t f);

/// How "g dominates h" is read when locating the crossover size.
struct DominationCriterion {
    double factor = 10.0;
    /// Base of the log in h; 0 selects the natural log.
    double log_base = 0.0;
    /// Multiply g by sqrt(pi) and h by 2, the coefficients the two terms carry
    /// in the closed-form bound.
    bool use_coefficients = false;

    void validate() const;
};

/// Smallest integer n* such that n^{(1-alpha)/2} >= factor * alpha * log(n)
/// for every n >= n*. Returns 1 when the inequality holds for all n >= 1.
/// Result is a double because thresholds reach 1e63 and beyond.
double domination_threshold(double alpha, const DominationCriterion& criterion = {});

/// (1 - alpha) / 2, the polynomial exponent of the age for f(n) = n^alpha.
double scaling_exponent(double alpha);

}  // namespace ringage
