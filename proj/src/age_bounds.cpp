#include "ringage/age_bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "ringage/error.hpp"
#include "ringage/neighbor_function.hpp"
#include "ringage/ring_topology.hpp"

namespace ringage {

void Rates::validate() const {
    if (!(std::isfinite(lambda_e) && lambda_e > 0.0))
        throw InvalidArgument(fmt::format("lambda_e must be positive and finite, got {}", lambda_e));
    if (!(std::isfinite(lambda) && lambda > 0.0))
        throw InvalidArgument(fmt::format("lambda must be positive and finite, got {}", lambda));
}

namespace {

void check_ring(std::int64_t n, std::int64_t f) {
    const std::int64_t hi = max_radius(n);
    if (f < 1 || f > hi) throw InvalidArgument(fmt::format("radius {} outside [1, {}] for n = {}", f, hi, n));
}

}  // namespace

BoundReport recursive_bound(std::int64_t n, std::int64_t f, const Rates& rates, bool keep_vector) {
    check_ring(n, f);
    rates.validate();

    BoundReport report;
    report.n = n;
    report.f = f;
    report.ratio = rates.ratio();

    const double r = report.ratio;
    const double two_f = 2.0 * static_cast<double>(f);
    const double nd = static_cast<double>(n);
    if (keep_vector) report.u.assign(static_cast<std::size_t>(n), 0.0);

    double next = r;  // u_n
    if (keep_vector) report.u.back() = next;
    for (std::int64_t j = n - 1; j >= 1; --j) {
        const double w = static_cast<double>(min_incoming_edges_formula(n, f, j)) / two_f;
        next = (r + w * next) / (static_cast<double>(j) / nd + w);
        if (keep_vector) report.u[static_cast<std::size_t>(j - 1)] = next;
    }
    report.u1 = next;

    const auto fd = static_cast<double>(f);
    report.x_sum = range_sum_x(fd, r);
    report.y_sum = range_sum_y(nd, fd, r);
    report.z_sum = range_sum_z(fd, r);
    report.closed_form = report.x_sum + report.y_sum + report.z_sum;
    return report;
}

double range_sum_x(double f, double ratio) {
    if (!(f >= 1.0)) throw InvalidArgument(fmt::format("radius must be >= 1, got {}", f));
    return ratio * (2.0 + std::numbers::ln2 + std::log(f) + kEulerGamma);
}

double range_sum_y(double n, double f, double ratio) {
    if (!(f >= 1.0)) throw InvalidArgument(fmt::format("radius must be >= 1, got {}", f));
    if (!(n >= 3.0)) throw InvalidArgument(fmt::format("ring needs n >= 3, got {}", n));
    return ratio * std::sqrt(std::numbers::pi) * std::sqrt(n) / std::sqrt(f);
}

double range_sum_z(double f, double ratio) {
    if (!(f >= 1.0)) throw InvalidArgument(fmt::format("radius must be >= 1, got {}", f));
    return ratio * (3.0 + std::log(f));
}

double closed_form_bound(std::int64_t n, std::int64_t f, const Rates& rates) {
    check_ring(n, f);
    rates.validate();
    const double r = rates.ratio();
    const auto fd = static_cast<double>(f);
    return range_sum_x(fd, r) + range_sum_y(static_cast<double>(n), fd, r) + range_sum_z(fd, r);
}

double special_case_bound(const Regime& regime, std::int64_t n, const Rates& rates) {
    max_radius(n);
    rates.validate();
    const double r = rates.ratio();
    const auto nd = static_cast<double>(n);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    if (std::holds_alternative<regime::FullyConnected>(regime)) return r * (2.0 + std::log(nd - 1.0));
    if (const auto* d = std::get_if<regime::FixedD>(&regime)) {
        if (!(d->d >= 1.0)) throw InvalidArgument(fmt::format("fixed radius must be >= 1, got {}", d->d));
        return r * sqrt_pi * std::sqrt(nd / d->d);
    }
    if (const auto* p = std::get_if<regime::PowerAlpha>(&regime)) {
        if (!(p->alpha > 0.0 && p->alpha < 1.0))
            throw InvalidArgument(fmt::format("power exponent must lie in (0,1), got {}", p->alpha));
        return r * sqrt_pi * std::pow(nd, (1.0 - p->alpha) / 2.0);
    }
    return r * std::log(nd);
}

RiemannCheck riemann_gaussian_check(std::int64_t n, std::int64_t f) {
    max_radius(n);
    if (f < 1) throw InvalidArgument(fmt::format("radius must be >= 1, got {}", f));
    const double scale = static_cast<double>(n) * static_cast<double>(f + 1);
    RiemannCheck out;
    for (std::int64_t i = 1; i <= n; ++i) {
        const auto id = static_cast<double>(i);
        const double term = std::exp(-id * id / scale);
        if (term == 0.0) break;
        out.sum += term;
    }
    out.analytic = std::sqrt(std::numbers::pi) / 2.0 * std::sqrt(scale);
    out.gap = std::abs(out.sum - out.analytic);
    return out;
}

void DominationCriterion::validate() const {
    if (!(factor > 0.0 && std::isfinite(factor)))
        throw InvalidArgument(fmt::format("domination factor must be positive, got {}", factor));
    if (log_base != 0.0 && !(log_base > 0.0 && log_base != 1.0 && std::isfinite(log_base)))
        throw InvalidArgument(fmt::format("log base must be positive and != 1, got {}", log_base));
}

double domination_threshold(double alpha, const DominationCriterion& criterion) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgument(fmt::format("alpha must lie in (0,1), got {}", alpha));
    criterion.validate();

    const double c = (1.0 - alpha) / 2.0;
    const double g_coef = criterion.use_coefficients ? std::sqrt(std::numbers::pi) : 1.0;
    const double h_coef = (criterion.use_coefficients ? 2.0 : 1.0) * criterion.factor * alpha /
                          (criterion.log_base == 0.0 ? 1.0 : std::log(criterion.log_base));

    // margin(x) = log g - log(factor h) at n = e^x, for x > 0. It is convex
    // with its minimum at x = 1/c, so the set where domination fails is one
    // interval and the threshold is the upper end of that interval.
    const auto margin = [&](double x) { return c * x + std::log(g_coef) - std::log(h_coef * x); };
    const auto holds_at = [&](double n) {
        return n <= 1.0 || g_coef * std::pow(n, c) >= h_coef * std::log(n);
    };

    const double lo_limit = std::log(2.0);
    const double hi_limit = 70.0 * std::numbers::ln10;
    double x_min = std::max(1.0 / c, lo_limit);
    if (x_min > hi_limit) x_min = hi_limit;
    if (margin(x_min) >= 0.0) return 1.0;
    if (margin(hi_limit) < 0.0) return std::numeric_limits<double>::infinity();

    double lo = x_min;
    double hi = hi_limit;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (margin(mid) < 0.0 ? lo : hi) = mid;
    }
    double threshold = std::ceil(std::exp(hi));

    // Pin the exact integer where it is representable.
    if (threshold < 1e15) {
        while (threshold - 1.0 > std::exp(x_min) && holds_at(threshold - 1.0)) threshold -= 1.0;
        while (!holds_at(threshold)) threshold += 1.0;
    }

    // Domination must persist beyond the threshold.
    for (double x = std::log(threshold); x <= hi_limit; x += 0.5)
        if (margin(x) < -1e-9) throw std::logic_error("domination not monotone beyond computed threshold");
    return threshold;
}

double scaling_exponent(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidArgument(fmt::format("alpha must lie in [0,1], got {}", alpha));
    return (1.0 - alpha) / 2.0;
}

}  // namespace ringage
