#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringage/age_bounds.hpp"
#include "ringage/neighbor_function.hpp"

namespace ringage {

/// How batch means are turned into a point estimate and interval.
enum class Estimator {
    /// Plain mean of the batch means.
    time_average,
    /// Batch means regressed on the observed source-update and source-push
    /// rates, whose true values (lambda_e, lambda) are known; the intercept
    /// is the estimate. Removes most of the Poisson-count noise.
    control_variate,
    /// Source updates are independent of all pushes, so given the push
    /// history a node's expected version age is lambda_e times the time since
    /// its information left the source. Batch means of that conditional
    /// expectation, regressed on the observed source-push rate.
    conditional,
};

std::string_view to_string(Estimator estimator);
/// Accepts time-average, control-variate, conditional.
Estimator parse_estimator(std::string_view name);

struct SimConfig {
    std::int64_t n = 3;
    NeighborFunction neighbors = radius::Constant{1};
    Rates rates;
    double horizon = 1e4;
    double warmup_fraction = 0.2;
    int replications = 1;
    std::uint64_t seed = 1;
    int batches = 20;
    Estimator estimator = Estimator::conditional;
    /// Also estimate every node's own mean age (symmetry diagnostics).
    bool per_node = false;
    /// Position of this run within a sweep; selects the random streams.
    std::uint64_t cell = 0;

    void validate() const;
};

/// Stationary mean version age with a batch-means confidence interval.
struct AgeEstimate {
    double mean = 0.0;
    double ci_halfwidth = 0.0;  // 95%
    double standard_error = 0.0;
    /// Time-average estimate and its standard error, always reported.
    double plain_mean = 0.0;
    double plain_standard_error = 0.0;
    /// Estimator actually used. control_variate falls back to time_average
    /// when the regression is not identifiable (too few batch samples or
    /// constant controls); conditional then drops its regression only.
    Estimator estimator = Estimator::time_average;
    double effective_horizon = 0.0;  // post-warmup time summed over replications
    std::uint64_t events_processed = 0;
    std::int64_t f = 0;
    SimConfig config;
    std::vector<double> replication_means;
    std::vector<double> per_node_mean;  // empty unless config.per_node
};

/// Raw output of one replication: time-averaged network-mean age per batch.
struct ReplicationResult {
    std::vector<double> batch_means;
    /// Observed source self-update rate in each batch (events / batch length).
    std::vector<double> batch_update_rates;
    /// Observed source-to-node push rate in each batch.
    std::vector<double> batch_push_rates;
    /// Observed node-to-neighbor push rate in each batch.
    std::vector<double> batch_gossip_rates;
    /// lambda_e times the time-averaged age of each node's information, per batch.
    std::vector<double> batch_conditional_means;
    std::uint64_t events = 0;
    std::vector<double> per_node_mean;
};

/// Parameters of the single-replication kernel. f = 0 means no gossip at all
/// (every node hears only the source), which also admits n = 1 and n = 2.
struct ReplicationParams {
    std::int64_t n = 1;
    std::int64_t f = 0;
    Rates rates;
    double horizon = 1e4;
    double warmup_fraction = 0.2;
    int batches = 20;
    bool per_node = false;
};

/// One run of the push-gossip process from the all-fresh state.
/// Events come from a single exponential clock at total rate
/// lambda_e + lambda + n lambda, with the event type drawn categorically:
/// source update, source push to a uniform node, or a uniform node pushing
/// to a uniform one of its 2f neighbors. The network age sum is maintained
/// incrementally so each event is O(1).
ReplicationResult run_replication(const ReplicationParams& params, std::uint64_t seed);

/// Pools the batch means of the given replications into one estimate.
AgeEstimate combine_replications(const std::vector<ReplicationResult>& runs, const SimConfig& config, std::int64_t f);

/// Resolves f, runs every replication (OpenMP across replications), pools.
AgeEstimate simulate(const SimConfig& config);

/// Like simulate, for an explicit radius; f = 0 allowed as in ReplicationParams.
AgeEstimate simulate_ring(std::int64_t f, const SimConfig& config);

struct SweepPoint {
    std::int64_t n = 0;
    double alpha = 0.0;
    /// Replications for this cell; 0 keeps the base configuration's count.
    int replications = 0;
};

struct SweepCell {
    SweepPoint point;
    std::int64_t f = 0;
    std::optional<AgeEstimate> estimate;
    std::string error;  // set when estimate is empty
};

/// Runs simulate on every (n, alpha) with f(n) = floor(n^alpha). Cell k uses
/// the streams of (base.seed, k). Cells run concurrently; a failing cell is
/// recorded and the rest continue. Output order equals grid order.
std::vector<SweepCell> simulate_sweep(const std::vector<SweepPoint>& grid, const SimConfig& base);

namespace serial {

/// Replications executed one after another; must match ringage::simulate exactly.
AgeEstimate simulate(const SimConfig& config);

}  // namespace serial

}  // namespace ringage
