#include "ringage/gossip_sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <exception>
#include <optional>
#include <random>
#include <tuple>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "ringage/error.hpp"
#include "ringage/rng.hpp"

namespace ringage {

std::string_view to_string(Estimator estimator) {
    switch (estimator) {
        case Estimator::time_average: return "time-average";
        case Estimator::control_variate: return "control-variate";
        case Estimator::conditional: return "conditional";
    }
    return "unknown";
}

Estimator parse_estimator(std::string_view name) {
    for (Estimator e : {Estimator::time_average, Estimator::control_variate, Estimator::conditional})
        if (to_string(e) == name) return e;
    throw InvalidArgument(fmt::format("unknown estimator '{}' (time-average|control-variate|conditional)", name));
}

void SimConfig::validate() const {
    if (!(horizon > 0.0 && std::isfinite(horizon)))
        throw InvalidArgument(fmt::format("horizon must be positive, got {}", horizon));
    if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0))
        throw InvalidArgument(fmt::format("warmup fraction must lie in [0,1), got {}", warmup_fraction));
    if (replications < 1) throw InvalidArgument(fmt::format("replications must be >= 1, got {}", replications));
    if (batches < 2) throw InvalidArgument(fmt::format("batches must be >= 2, got {}", batches));
    rates.validate();
}

namespace {

void validate_params(const ReplicationParams& p) {
    if (p.n < 1) throw InvalidArgument(fmt::format("need at least one node, got {}", p.n));
    const std::int64_t hi = p.n >= 3 ? (p.n - 1) / 2 : 0;
    if (p.f < 0 || p.f > hi) throw InvalidArgument(fmt::format("radius {} outside [0, {}] for n = {}", p.f, hi, p.n));
    if (!(p.horizon > 0.0 && std::isfinite(p.horizon)))
        throw InvalidArgument(fmt::format("horizon must be positive, got {}", p.horizon));
    if (!(p.warmup_fraction >= 0.0 && p.warmup_fraction < 1.0))
        throw InvalidArgument(fmt::format("warmup fraction must lie in [0,1), got {}", p.warmup_fraction));
    if (p.batches < 2) throw InvalidArgument(fmt::format("batches must be >= 2, got {}", p.batches));
    p.rates.validate();
}

// Time integral of the network age sum, split into equal post-warmup batches.
class BatchIntegrator {
public:
    BatchIntegrator(double warmup, double horizon, int batches)
        : warmup_(warmup), horizon_(horizon), width_((horizon - warmup) / batches), sums_(static_cast<std::size_t>(batches), 0.0) {}

    // Over [from, to) the age sum is constant and the information-age sum is
    // nodes * t - stamp_sum.
    void add(double from, double to, double age_sum, double nodes, double stamp_sum) {
        if (to <= warmup_) return;
        from = std::max(from, warmup_);
        while (from < to) {
            const double edge = boundary(current_);
            const double end = std::min(to, edge);
            sums_[current_] += age_sum * (end - from);
            info_sums_[current_] += (nodes * 0.5 * (from + end) - stamp_sum) * (end - from);
            from = end;
            if (from >= edge && current_ + 1 < sums_.size()) ++current_;
        }
    }

    void count_update(double t) { count(updates_, t); }
    void count_push(double t) { count(pushes_, t); }
    void count_gossip(double t) { count(gossips_, t); }

    std::vector<double> update_rates() const { return rates(updates_); }
    std::vector<double> push_rates() const { return rates(pushes_); }
    std::vector<double> gossip_rates() const { return rates(gossips_); }

    std::vector<double> means(double scale) const { return scaled(sums_, scale); }
    std::vector<double> info_means(double scale) const { return scaled(info_sums_, scale); }

private:
    std::vector<double> scaled(const std::vector<double>& sums, double scale) const {
        std::vector<double> out(sums.size());
        for (std::size_t b = 0; b < sums.size(); ++b) out[b] = sums[b] / (scale * width_);
        return out;
    }

    void count(std::vector<std::uint64_t>& tally, double t) const {
        if (t <= warmup_) return;
        tally[std::min(static_cast<std::size_t>((t - warmup_) / width_), tally.size() - 1)] += 1;
    }

    std::vector<double> rates(const std::vector<std::uint64_t>& tally) const {
        std::vector<double> out(tally.size());
        for (std::size_t b = 0; b < tally.size(); ++b) out[b] = static_cast<double>(tally[b]) / width_;
        return out;
    }

    double boundary(std::size_t b) const {
        return b + 1 == sums_.size() ? horizon_ : warmup_ + static_cast<double>(b + 1) * width_;
    }

    double warmup_;
    double horizon_;
    double width_;
    std::vector<double> sums_;
    std::vector<double> info_sums_ = std::vector<double>(sums_.size(), 0.0);
    std::vector<std::uint64_t> updates_ = std::vector<std::uint64_t>(sums_.size(), 0);
    std::vector<std::uint64_t> pushes_ = std::vector<std::uint64_t>(sums_.size(), 0);
    std::vector<std::uint64_t> gossips_ = std::vector<std::uint64_t>(sums_.size(), 0);
    std::size_t current_ = 0;
};

// Lazily integrates each node's version counter over [warmup, horizon].
class NodeIntegrals {
public:
    NodeIntegrals(std::size_t n, double warmup) : warmup_(warmup), last_(n + 1, 0.0), integral_(n + 1, 0.0) {}

    // Slot n holds the source counter.
    void before_change(std::size_t slot, double t, std::uint64_t old_value) {
        if (t > warmup_) integral_[slot] += static_cast<double>(old_value) * (t - std::max(last_[slot], warmup_));
        last_[slot] = t;
    }

    std::vector<double> mean_ages(const std::vector<std::uint64_t>& versions, std::uint64_t source, double horizon) {
        const std::size_t n = versions.size();
        before_change(n, horizon, source);
        for (std::size_t i = 0; i < n; ++i) before_change(i, horizon, versions[i]);
        std::vector<double> out(n);
        const double span = horizon - warmup_;
        for (std::size_t i = 0; i < n; ++i) out[i] = (integral_[n] - integral_[i]) / span;
        return out;
    }

private:
    double warmup_;
    std::vector<double> last_;
    std::vector<double> integral_;
};

SweepCell failed_cell(const SweepPoint& p, std::string message) {
    SweepCell c;
    c.point = p;
    c.error = std::move(message);
    return c;
}

NeighborFunction power_law(double alpha) {
    if (alpha <= 0.0) return radius::Constant{1};
    if (alpha >= 1.0) return radius::FullyConnected{};
    return radius::Power{alpha};
}

ReplicationParams params_for(std::int64_t f, const SimConfig& c) {
    return ReplicationParams{c.n, f, c.rates, c.horizon, c.warmup_fraction, c.batches, c.per_node};
}

}  // namespace

ReplicationResult run_replication(const ReplicationParams& params, std::uint64_t seed) {
    validate_params(params);
    const auto n = static_cast<std::size_t>(params.n);
    const std::int64_t f = params.f;
    const double lambda_e = params.rates.lambda_e;
    const double lambda = params.rates.lambda;
    const double total_rate = lambda_e + lambda + static_cast<double>(params.n) * lambda;
    const double warmup = params.warmup_fraction * params.horizon;

    Engine rng(seed);
    std::exponential_distribution<double> clock(total_rate);
    std::uniform_real_distribution<double> kind(0.0, total_rate);
    std::uniform_int_distribution<std::size_t> pick_node(0, n - 1);
    // One draw selects both the pushing node and which of its 2f links fires.
    std::uniform_int_distribution<std::int64_t> pick_link(0, std::max<std::int64_t>(params.n * 2 * f - 1, 0));

    std::uint64_t source = 0;
    std::vector<std::uint64_t> version(n, 0);
    std::uint64_t age_sum = 0;  // sum over nodes of (source - version)
    // Time at which each node's current information left the source.
    std::vector<double> stamp(n, 0.0);
    double stamp_sum = 0.0;

    BatchIntegrator batches(warmup, params.horizon, params.batches);
    std::optional<NodeIntegrals> per_node;
    if (params.per_node) per_node.emplace(n, warmup);

    const auto deliver = [&](std::size_t j, std::uint64_t v, double stamped, double t) {
        if (stamped > stamp[j]) {
            stamp_sum += stamped - stamp[j];
            stamp[j] = stamped;
        }
        if (v <= version[j]) return;
        if (per_node) per_node->before_change(j, t, version[j]);
        age_sum -= v - version[j];
        version[j] = v;
    };

    ReplicationResult out;
    double t = 0.0;
    for (;;) {
        double t_next = t + clock(rng);
        const bool done = t_next >= params.horizon;
        if (done) t_next = params.horizon;
        batches.add(t, t_next, static_cast<double>(age_sum), static_cast<double>(n), stamp_sum);
        if (done) break;
        t = t_next;
        ++out.events;

        const double u = kind(rng);
        if (u < lambda_e) {
            if (per_node) per_node->before_change(n, t, source);
            ++source;
            age_sum += n;
            batches.count_update(t);
        } else if (u < lambda_e + lambda) {
            batches.count_push(t);
            deliver(pick_node(rng), source, t, t);
        } else {
            batches.count_gossip(t);
            if (f == 0) continue;
            const std::int64_t link = pick_link(rng);
            const std::int64_t i = link / (2 * f);
            const std::int64_t k = link % (2 * f);
            const std::int64_t d = k < f ? k + 1 : f - 1 - k;  // 1..f, then -1..-f
            const auto j = static_cast<std::size_t>((i + d + params.n) % params.n);
            deliver(j, version[static_cast<std::size_t>(i)], stamp[static_cast<std::size_t>(i)], t);
        }
        assert(n > 64 || std::all_of(version.begin(), version.end(), [&](std::uint64_t v) { return v <= source; }));
    }

    out.batch_means = batches.means(static_cast<double>(n));
    out.batch_update_rates = batches.update_rates();
    out.batch_push_rates = batches.push_rates();
    out.batch_gossip_rates = batches.gossip_rates();
    out.batch_conditional_means = batches.info_means(static_cast<double>(n) / lambda_e);
    if (per_node) out.per_node_mean = per_node->mean_ages(version, source, params.horizon);
    return out;
}

AgeEstimate combine_replications(const std::vector<ReplicationResult>& runs, const SimConfig& config, std::int64_t f) {
    if (runs.empty()) throw InvalidArgument("no replications to combine");
    AgeEstimate est;
    est.config = config;
    est.f = f;

    const bool conditional = config.estimator == Estimator::conditional;
    std::vector<double> plain;
    std::vector<double> y;
    std::vector<double> updates;
    std::vector<double> pushes;
    std::vector<double> gossips;
    for (const auto& r : runs) {
        plain.insert(plain.end(), r.batch_means.begin(), r.batch_means.end());
        const auto& resp = conditional ? r.batch_conditional_means : r.batch_means;
        y.insert(y.end(), resp.begin(), resp.end());
        updates.insert(updates.end(), r.batch_update_rates.begin(), r.batch_update_rates.end());
        pushes.insert(pushes.end(), r.batch_push_rates.begin(), r.batch_push_rates.end());
        gossips.insert(gossips.end(), r.batch_gossip_rates.begin(), r.batch_gossip_rates.end());
        est.events_processed += r.events;
        double m = 0.0;
        for (double b : resp) m += b;
        est.replication_means.push_back(m / static_cast<double>(resp.size()));
    }

    const auto k = static_cast<Eigen::Index>(y.size());
    const auto mean_and_se = [k](const std::vector<double>& v) {
        const Eigen::Map<const Eigen::VectorXd> m(v.data(), k);
        const double mean = m.mean();
        return std::pair{mean, std::sqrt((m.array() - mean).square().sum() / static_cast<double>(k - 1) /
                                         static_cast<double>(k))};
    };
    std::tie(est.plain_mean, est.plain_standard_error) = mean_and_se(plain);

    est.estimator = conditional ? Estimator::conditional : Estimator::time_average;
    std::tie(est.mean, est.standard_error) = mean_and_se(y);
    double dof = static_cast<double>(k - 1);

    if (config.estimator != Estimator::time_average) {
        // Columns: intercept, then each control centered at its known mean.
        std::vector<std::pair<const std::vector<double>*, double>> controls;
        if (!conditional) controls.emplace_back(&updates, config.rates.lambda_e);
        controls.emplace_back(&pushes, config.rates.lambda);
        if (conditional) controls.emplace_back(&gossips, static_cast<double>(config.n) * config.rates.lambda);
        const auto p = static_cast<Eigen::Index>(controls.size() + 1);
        if (k > p) {
            Eigen::MatrixXd x(k, p);
            for (Eigen::Index i = 0; i < k; ++i) {
                x(i, 0) = 1.0;
                for (Eigen::Index c = 1; c < p; ++c) {
                    const auto& [values, centre] = controls[static_cast<std::size_t>(c - 1)];
                    x(i, c) = (*values)[static_cast<std::size_t>(i)] - centre;
                }
            }
            const Eigen::Map<const Eigen::VectorXd> ys(y.data(), k);
            const Eigen::MatrixXd gram = x.transpose() * x;
            const Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
            if (lu.isInvertible()) {
                const Eigen::VectorXd beta = lu.solve(x.transpose() * ys);
                const double rss = (ys - x * beta).squaredNorm();
                dof = static_cast<double>(k - p);
                est.estimator = config.estimator;
                est.mean = beta(0);
                est.standard_error = std::sqrt(rss / dof * lu.inverse()(0, 0));
            }
        }
    }

    const boost::math::students_t dist(dof);
    est.ci_halfwidth = boost::math::quantile(dist, 0.975) * est.standard_error;
    est.effective_horizon = static_cast<double>(runs.size()) * config.horizon * (1.0 - config.warmup_fraction);

    if (config.per_node) {
        est.per_node_mean.assign(runs.front().per_node_mean.size(), 0.0);
        for (const auto& r : runs)
            for (std::size_t i = 0; i < r.per_node_mean.size(); ++i) est.per_node_mean[i] += r.per_node_mean[i];
        for (double& v : est.per_node_mean) v /= static_cast<double>(runs.size());
    }
    return est;
}

AgeEstimate simulate_ring(std::int64_t f, const SimConfig& config) {
    config.validate();
    const ReplicationParams params = params_for(f, config);
    validate_params(params);

    std::vector<ReplicationResult> runs(static_cast<std::size_t>(config.replications));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < config.replications; ++r) {
        try {
            runs[static_cast<std::size_t>(r)] =
                run_replication(params, stream_seed(config.seed, config.cell, static_cast<std::uint64_t>(r)));
        } catch (...) {
#pragma omp critical(ringage_sim_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return combine_replications(runs, config, f);
}

AgeEstimate simulate(const SimConfig& config) {
    config.validate();
    return simulate_ring(eval_f(config.neighbors, config.n), config);
}

std::vector<SweepCell> simulate_sweep(const std::vector<SweepPoint>& grid, const SimConfig& base) {
    std::vector<SweepCell> cells(grid.size());
    const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < count; ++k) {
        const SweepPoint& p = grid[static_cast<std::size_t>(k)];
        try {
            SimConfig cfg = base;
            cfg.n = p.n;
            cfg.neighbors = power_law(p.alpha);
            cfg.cell = static_cast<std::uint64_t>(k);
            if (p.replications > 0) cfg.replications = p.replications;
            SweepCell cell;
            cell.point = p;
            cell.f = eval_f(cfg.neighbors, cfg.n);
            cell.estimate = simulate_ring(cell.f, cfg);
            cells[static_cast<std::size_t>(k)] = std::move(cell);
        } catch (const std::exception& e) {
            cells[static_cast<std::size_t>(k)] = failed_cell(p, e.what());
        }
    }
    return cells;
}

namespace serial {

AgeEstimate simulate(const SimConfig& config) {
    config.validate();
    const std::int64_t f = eval_f(config.neighbors, config.n);
    const ReplicationParams params = params_for(f, config);
    std::vector<ReplicationResult> runs;
    for (int r = 0; r < config.replications; ++r)
        runs.push_back(run_replication(params, stream_seed(config.seed, config.cell, static_cast<std::uint64_t>(r))));
    return combine_replications(runs, config, f);
}

}  // namespace serial

}  // namespace ringage
