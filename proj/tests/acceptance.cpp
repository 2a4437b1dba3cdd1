// End-to-end acceptance gate. Prints one [PASS]/[FAIL] line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <unistd.h>

#include "ringage/age_bounds.hpp"
#include "ringage/experiments.hpp"
#include "ringage/neighbor_function.hpp"

using namespace ringage;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (!detail.empty()) detail += "; ";
        detail += why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class T>
T cell(const ResultTable& t, std::size_t row, const std::string& col) {
    return std::get<T>(t.at(row, col));
}

bool flag(const ResultTable& t, std::size_t row, const std::string& col) {
    const Value& v = t.at(row, col);
    return std::holds_alternative<bool>(v) && std::get<bool>(v);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const double kSqrtPi = std::sqrt(std::numbers::pi);

// Shared between criteria 1 and 3.
ResultTable g_oracle;

Outcome c1_oracle_equivalence() {
    Outcome o;
    const auto start = Clock::now();
    g_oracle = run_oracle_matrix(ExperimentSpec::defaults(ExperimentKind::oracle_matrix));
    const double elapsed = seconds_since(start);
    double worst = 0.0;
    for (std::size_t r = 0; r < g_oracle.rows.size(); ++r) {
        const double exact = cell<double>(g_oracle, r, "exact");
        const double sim = cell<double>(g_oracle, r, "sim_mean");
        const double se = cell<double>(g_oracle, r, "sim_se");
        worst = std::max(worst, std::abs(sim - exact) / std::max(3.0 * se, 0.02 * exact));
        if (!flag(g_oracle, r, "sim_agrees")) {
            o.fail(fmt::format("n={} f={} sim={:.5f} exact={:.5f} se={:.5f}", cell<std::int64_t>(g_oracle, r, "n"),
                               cell<std::int64_t>(g_oracle, r, "f"), sim, exact, se));
        }
    }
    if (g_oracle.rows.size() != 20) o.fail(fmt::format("expected 20 (n, f) cells, got {}", g_oracle.rows.size()));
    if (elapsed > 600.0) o.fail(fmt::format("took {:.0f}s > 600s", elapsed));
    if (o.pass)
        o.detail = fmt::format("{} cells agree, worst |sim-exact|/tol = {:.2f}, {:.1f}s", g_oracle.rows.size(), worst,
                               elapsed);
    return o;
}

Outcome c2_edge_animals() {
    Outcome o;
    const auto start = Clock::now();
    const ResultTable t = run_animal_sweep(ExperimentSpec::defaults(ExperimentKind::animal_sweep));
    const double elapsed = seconds_since(start);
    std::int64_t max_n = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        max_n = std::max(max_n, cell<std::int64_t>(t, r, "n"));
        if (!flag(t, r, "equal") || !flag(t, r, "contiguous_witness"))
            o.fail(fmt::format("n={} f={} j={} brute={} formula={}", cell<std::int64_t>(t, r, "n"),
                               cell<std::int64_t>(t, r, "f"), cell<std::int64_t>(t, r, "j"),
                               cell<std::int64_t>(t, r, "brute_force_min"), cell<std::int64_t>(t, r, "formula")));
    }
    if (max_n != 12) o.fail(fmt::format("largest n covered is {}", max_n));
    if (elapsed > 300.0) o.fail(fmt::format("took {:.0f}s > 300s", elapsed));
    if (o.pass) o.detail = fmt::format("{} (n, f, j) cells up to n = 12 match, {:.1f}s", t.rows.size(), elapsed);
    return o;
}

Outcome c3_bound_ordering() {
    Outcome o;
    for (std::size_t r = 0; r < g_oracle.rows.size(); ++r)
        if (!flag(g_oracle, r, "exact_below_bound"))
            o.fail(fmt::format("exact above u1 at n={} f={}", cell<std::int64_t>(g_oracle, r, "n"),
                               cell<std::int64_t>(g_oracle, r, "f")));
    if (g_oracle.rows.empty()) o.fail("oracle matrix unavailable");

    const ResultTable t = run_bound_compare(ExperimentSpec::defaults(ExperimentKind::bound_compare));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto n = cell<std::int64_t>(t, r, "n");
        const double alpha = cell<double>(t, r, "alpha");
        if (!flag(t, r, "within_slack"))
            o.fail(fmt::format("u1 > closed form + ratio at n={} alpha={}", n, alpha));
        const Value& mono = t.at(r, "gap_non_increasing");
        if (std::holds_alternative<bool>(mono) && !std::get<bool>(mono))
            o.fail(fmt::format("gap rises at n={} alpha {:.1f}->{:.1f}: {:.4f} -> {:.4f}", n, alpha - 0.1, alpha,
                               cell<double>(t, r - 1, "relative_gap"), cell<double>(t, r, "relative_gap")));
    }
    if (t.rows.size() != 20) o.fail(fmt::format("expected 20 cells, got {}", t.rows.size()));
    if (o.pass) o.detail = "exact <= u1 on all oracle cells; u1 <= closed form + ratio and gap non-increasing on all 20 cells";
    return o;
}

Outcome c4_special_cases() {
    Outcome o;
    const Rates rates;
    std::vector<std::string> parts;
    for (std::int64_t n : {100, 1000, 10'000}) {
        const double u1 = recursive_bound(n, max_radius(n), rates, false).u1;
        const double limit = rates.ratio() * (2.0 + std::log(static_cast<double>(n - 1))) + 0.5;
        parts.push_back(fmt::format("full n={}: {:.3f}<={:.3f}", n, u1, limit));
        if (!(u1 <= limit)) o.fail(parts.back());
    }
    for (std::int64_t n : {1000, 10'000, 100'000}) {
        const double scaled = recursive_bound(n, 1, rates, false).u1 / std::sqrt(static_cast<double>(n));
        parts.push_back(fmt::format("f=1 n={}: u1/sqrt(n)={:.3f}", n, scaled));
        if (!(scaled >= 0.5 * kSqrtPi * rates.ratio() && scaled <= 1.5 * kSqrtPi * rates.ratio())) o.fail(parts.back());
    }
    if (o.pass) o.detail = fmt::format("{}", fmt::join(parts, ", "));
    return o;
}

Outcome c5_power_law_scaling() {
    Outcome o;
    std::vector<std::string> parts;
    for (double alpha : {0.2, 0.5, 0.8}) {
        double lo = INFINITY;
        double hi = 0.0;
        for (std::int64_t n : {10'000, 100'000, 1'000'000}) {
            const std::int64_t f = eval_f(radius::Power{alpha}, n);
            const double ratio =
                recursive_bound(n, f, Rates{}, false).u1 / std::pow(static_cast<double>(n), scaling_exponent(alpha));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        parts.push_back(fmt::format("alpha={}: [{:.3f}, {:.3f}] spread {:.3f}", alpha, lo, hi, hi / lo));
        if (!(hi / lo < 2.0)) o.fail(parts.back());
    }
    if (o.pass) o.detail = fmt::format("{}", fmt::join(parts, "; "));
    return o;
}

Outcome c6_fig4() {
    Outcome o;
    const auto start = Clock::now();
    const ResultTable t = run_fig4(ExperimentSpec::defaults(ExperimentKind::fig4));
    const double elapsed = seconds_since(start);
    if (t.rows.size() != 30) o.fail(fmt::format("expected 30 cells, got {}", t.rows.size()));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto n = cell<std::int64_t>(t, r, "n");
        const double alpha = cell<double>(t, r, "alpha");
        if (!std::holds_alternative<std::monostate>(t.at(r, "error"))) {
            o.fail(fmt::format("n={} alpha={} failed: {}", n, alpha, cell<std::string>(t, r, "error")));
            continue;
        }
        if (!flag(t, r, "below_bound"))
            o.fail(fmt::format("n={} alpha={} sim {:.4f} above bound {:.4f}", n, alpha, cell<double>(t, r, "sim_mean"),
                               cell<double>(t, r, "recursive_bound")));
        const Value& dec = t.at(r, "decreasing_in_alpha");
        if (std::holds_alternative<bool>(dec) && !std::get<bool>(dec))
            o.fail(fmt::format("n={} alpha {}->{}: {:.4f}+-{:.4f} vs {:.4f}+-{:.4f}", n, alpha,
                               cell<double>(t, r + 1, "alpha"), cell<double>(t, r, "sim_mean"),
                               cell<double>(t, r, "sim_ci"), cell<double>(t, r + 1, "sim_mean"),
                               cell<double>(t, r + 1, "sim_ci")));
    }
    if (elapsed > 1800.0) o.fail(fmt::format("took {:.0f}s > 1800s", elapsed));
    if (o.pass)
        o.detail = fmt::format("30 cells below their bounds, separated CIs along alpha at every n, {:.0f}s", elapsed);
    return o;
}

Outcome c7_thresholds() {
    Outcome o;
    const ResultTable t = run_table1(ExperimentSpec::defaults(ExperimentKind::table1));
    const std::vector<std::pair<double, double>> published = {{0.2, 942.0}, {0.3, 24180.0}, {0.4, 9.55e5}, {0.5, 1.22e8}};
    std::vector<std::string> parts;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double alpha = cell<double>(t, r, "alpha");
        if (cell<double>(t, r, "scaling_exponent") != (1.0 - alpha) / 2.0)
            o.fail(fmt::format("exponent at alpha={} is not (1-alpha)/2", alpha));
        for (const auto& [a, ref] : published) {
            if (std::abs(a - alpha) > 1e-9) continue;
            const double th = cell<double>(t, r, "threshold");
            parts.push_back(fmt::format("alpha={}: {:.4g} vs {:.4g} (x{:.2f})", alpha, th, ref, th / ref));
            if (!(th >= ref / 2.0 && th <= ref * 2.0)) o.fail(parts.back());
        }
    }
    if (parts.size() != published.size()) o.fail("missing threshold rows");
    if (o.pass) o.detail = fmt::format("{}; exponents exact", fmt::join(parts, ", "));
    return o;
}

Outcome c8_riemann() {
    Outcome o;
    const RiemannCheck c = riemann_gaussian_check(1'000'000, 1);
    const double rel = c.gap / c.analytic;
    o.detail = fmt::format("sum {:.3f}, integral {:.3f}, relative gap {:.2e}", c.sum, c.analytic, rel);
    if (!(rel < 0.01)) o.fail("relative gap >= 1%");
    return o;
}

Outcome c9_determinism() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / fmt::format("ringage_acceptance_{}", ::getpid());
    std::filesystem::create_directories(dir);

    std::vector<ExperimentSpec> specs;
    for (auto kind : {ExperimentKind::table1, ExperimentKind::bound_compare, ExperimentKind::animal_sweep,
                      ExperimentKind::oracle_matrix})
        specs.push_back(ExperimentSpec::defaults(kind));
    // The full sweep already runs once in criterion 6; its two smallest rings
    // keep the re-run affordable while covering the per-alpha replication path.
    ExperimentSpec fig4 = ExperimentSpec::defaults(ExperimentKind::fig4);
    fig4.ns = {1000, 2000};
    specs.push_back(fig4);

    std::vector<std::string> checked;
    for (auto& spec : specs)
        for (OutputFormat format : {OutputFormat::csv, OutputFormat::json}) {
            if (format == OutputFormat::json && spec.kind != ExperimentKind::table1 &&
                spec.kind != ExperimentKind::oracle_matrix)
                continue;
            spec.format = format;
            std::string bytes[2];
            for (int run = 0; run < 2; ++run) {
                spec.output_path = (dir / fmt::format("{}_{}.{}", to_string(spec.kind), run, to_string(format))).string();
                std::ostringstream unused;
                write_table(run_experiment(spec), spec, unused);
                bytes[run] = read_file(spec.output_path);
            }
            const std::string label = fmt::format("{}/{}", to_string(spec.kind), to_string(format));
            if (bytes[0].empty() || bytes[0] != bytes[1]) o.fail(label + " differs between runs");
            checked.push_back(label);
        }
    std::filesystem::remove_all(dir);
    if (o.pass) o.detail = fmt::format("byte-identical re-runs: {}", fmt::join(checked, ", "));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"C1 oracle equivalence", c1_oracle_equivalence},
        {"C2 minimal edge animals", c2_edge_animals},
        {"C3 bound ordering", c3_bound_ordering},
        {"C4 special cases", c4_special_cases},
        {"C5 power-law scaling", c5_power_law_scaling},
        {"C6 alpha sweep", c6_fig4},
        {"C7 domination thresholds", c7_thresholds},
        {"C8 Gaussian sum", c8_riemann},
        {"C9 determinism", c9_determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(fmt::format("threw: {}", e.what()));
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
    }
    std::cout << fmt::format("{}/{} criteria passed", criteria.size() - static_cast<std::size_t>(failures),
                             criteria.size())
              << std::endl;
    return failures == 0 ? 0 : 1;
}
