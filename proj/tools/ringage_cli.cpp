// ringage: version age on generalized ring gossip networks.
//
//   ringage bound     --n N --f-kind KIND [--alpha A|--d D|--f F] [--emit-vector]
//   ringage simulate  --n N --f-kind KIND ... --horizon T --warmup W --reps R --seed S
//   ringage exact     --n N --f F [--table]
//   ringage animal    --n N --f F (--j J | --all)
//   ringage threshold --alpha A [--factor K] [--log-base B] [--coefficients]
//   ringage sweep     --experiment {fig4|table1|bound-compare|oracle-matrix|animal} --out PATH --format {csv|json}
//
// Results go to stdout as one JSON object (sweep writes its table to --out).
// Failures exit nonzero with {"error": {...}} on stderr.

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ringage/age_bounds.hpp"
#include "ringage/error.hpp"
#include "ringage/exact_oracle.hpp"
#include "ringage/experiments.hpp"
#include "ringage/gossip_sim.hpp"
#include "ringage/minimal_animal.hpp"
#include "ringage/rng.hpp"

using nlohmann::ordered_json;
using namespace ringage;

namespace {

struct RadiusArgs {
    std::string kind = "power";
    double alpha = 0.5;
    std::int64_t d = 1;
    std::int64_t f = 1;

    void add_to(CLI::App* app) {
        app->add_option("--f-kind", kind, "radius function: constant|power|full|nlogsq|explicit")
            ->check(CLI::IsMember({"constant", "power", "full", "nlogsq", "explicit"}))
            ->capture_default_str();
        app->add_option("--alpha", alpha, "exponent for --f-kind power")->capture_default_str();
        app->add_option("--d", d, "radius for --f-kind constant")->capture_default_str();
        app->add_option("--f", f, "radius for --f-kind explicit")->capture_default_str();
    }

    NeighborFunction spec() const {
        if (kind == "constant") return radius::Constant{d};
        if (kind == "power") return radius::Power{alpha};
        if (kind == "full") return radius::FullyConnected{};
        if (kind == "nlogsq") return radius::NOverLogSq{};
        return radius::Explicit{f};
    }
};

struct RateArgs {
    Rates rates;
    void add_to(CLI::App* app) {
        app->add_option("--lambda-e", rates.lambda_e, "source self-update rate")->capture_default_str();
        app->add_option("--lambda", rates.lambda, "dissemination rate")->capture_default_str();
    }
};

ordered_json members_json(NodeSet s) { return ordered_json(s.members()); }

ordered_json estimate_json(const AgeEstimate& e) {
    ordered_json j;
    j["mean"] = e.mean;
    j["ci_halfwidth"] = e.ci_halfwidth;
    j["standard_error"] = e.standard_error;
    j["estimator"] = std::string(to_string(e.estimator));
    j["plain_mean"] = e.plain_mean;
    j["plain_standard_error"] = e.plain_standard_error;
    j["effective_horizon"] = e.effective_horizon;
    j["events_processed"] = e.events_processed;
    j["f"] = e.f;
    j["replication_means"] = e.replication_means;
    if (!e.per_node_mean.empty()) j["per_node_mean"] = e.per_node_mean;
    const SimConfig& c = e.config;
    j["config"] = {{"n", c.n},
                   {"neighbors", describe(c.neighbors)},
                   {"lambda_e", c.rates.lambda_e},
                   {"lambda", c.rates.lambda},
                   {"horizon", c.horizon},
                   {"warmup_fraction", c.warmup_fraction},
                   {"replications", c.replications},
                   {"batches", c.batches},
                   {"seed", c.seed},
                   {"cell", c.cell},
                   {"estimator", std::string(to_string(c.estimator))},
                   {"seed_splitting", std::string(kSeedSplittingRule)}};
    return j;
}

std::vector<std::int64_t> parse_ns(const std::vector<double>& raw) {
    std::vector<std::int64_t> out;
    for (double v : raw) {
        if (v != std::floor(v)) throw InvalidArgument(fmt::format("--ns value {} is not an integer", v));
        out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

std::vector<std::pair<double, int>> parse_reps_at(const std::vector<std::string>& raw) {
    std::vector<std::pair<double, int>> out;
    if (raw.size() == 1 && raw.front() == "none") return out;
    for (const auto& item : raw) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw InvalidArgument(fmt::format("--reps-at entry '{}' is not ALPHA:REPS", item));
        std::size_t used = 0;
        const double alpha = std::stod(item.substr(0, colon));
        const int reps = std::stoi(item.substr(colon + 1), &used);
        if (used != item.size() - colon - 1)
            throw InvalidArgument(fmt::format("--reps-at entry '{}' is not ALPHA:REPS", item));
        out.emplace_back(alpha, reps);
    }
    return out;
}

int emit_error(const std::string& kind, const std::string& message, int code) {
    ordered_json e;
    e["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    std::cerr << e.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Version age of gossip on generalized rings"};
    app.require_subcommand(1);

    // bound
    auto* bound = app.add_subcommand("bound", "recursive and closed-form upper bounds on single-node age");
    std::int64_t bound_n = 0;
    bool emit_vector = false;
    RadiusArgs bound_radius;
    RateArgs bound_rates;
    bound->add_option("--n", bound_n, "node count")->required();
    bound_radius.add_to(bound);
    bound_rates.add_to(bound);
    bound->add_flag("--emit-vector", emit_vector, "include u_1..u_n");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo estimate of single-node age");
    SimConfig sim;
    RadiusArgs sim_radius;
    RateArgs sim_rates;
    std::string estimator(to_string(SimConfig{}.estimator));
    simulate_cmd->add_option("--n", sim.n, "node count")->required();
    sim_radius.add_to(simulate_cmd);
    sim_rates.add_to(simulate_cmd);
    simulate_cmd->add_option("--horizon", sim.horizon, "simulated time per replication")->capture_default_str();
    simulate_cmd->add_option("--warmup", sim.warmup_fraction, "fraction of horizon discarded")->capture_default_str();
    simulate_cmd->add_option("--reps", sim.replications, "independent replications")->capture_default_str();
    simulate_cmd->add_option("--seed", sim.seed, "master seed")->capture_default_str();
    simulate_cmd->add_option("--batches", sim.batches, "batches per replication")->capture_default_str();
    simulate_cmd->add_option("--estimator", estimator, "conditional|control-variate|time-average")
        ->check(CLI::IsMember({"conditional", "control-variate", "time-average"}))
        ->capture_default_str();
    simulate_cmd->add_flag("--per-node", sim.per_node, "also report every node's mean age");

    // exact
    auto* exact = app.add_subcommand("exact", "exact set-recursion solution for small rings");
    std::int64_t exact_n = 0;
    std::int64_t exact_f = 0;
    bool exact_table = false;
    int exact_cap = kDefaultExactCap;
    RateArgs exact_rates;
    exact->add_option("--n", exact_n, "node count")->required();
    exact->add_option("--f", exact_f, "radius")->required();
    exact_rates.add_to(exact);
    exact->add_flag("--table", exact_table, "emit v_S for every non-empty subset");
    exact->add_option("--cap", exact_cap, "largest n accepted")->capture_default_str();

    // animal
    auto* animal = app.add_subcommand("animal", "brute-force minimum incoming edges over connected sets");
    std::int64_t animal_n = 0;
    std::int64_t animal_f = 0;
    std::int64_t animal_j = 0;
    bool animal_all = false;
    int animal_cap = kDefaultAnimalCap;
    animal->add_option("--n", animal_n, "node count")->required();
    animal->add_option("--f", animal_f, "radius")->required();
    auto* j_opt = animal->add_option("--j", animal_j, "set size");
    auto* all_opt = animal->add_flag("--all", animal_all, "every set size 1..n-1");
    j_opt->excludes(all_opt);
    animal->add_option("--cap", animal_cap, "largest n accepted")->capture_default_str();

    // threshold
    auto* threshold = app.add_subcommand("threshold", "size where n^((1-a)/2) dominates the log term");
    double th_alpha = 0.5;
    DominationCriterion criterion;
    std::string log_base = "e";
    threshold->add_option("--alpha", th_alpha, "exponent in (0,1)")->required();
    threshold->add_option("--factor", criterion.factor, "domination multiple")->capture_default_str();
    threshold->add_option("--log-base", log_base, "log base: e or a positive number")->capture_default_str();
    threshold->add_flag("--coefficients", criterion.use_coefficients, "include sqrt(pi) and 2 coefficients");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a full experiment grid and write a table");
    std::string experiment;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> sw_seed;
    std::optional<double> sw_horizon;
    std::optional<int> sw_reps;
    std::optional<int> sw_batches;
    std::optional<double> sw_warmup;
    std::vector<double> sw_ns;
    std::vector<double> sw_alphas;
    RateArgs sw_rates;
    std::optional<std::string> sw_estimator;
    DominationCriterion sw_criterion;
    std::string sw_log_base = "e";
    int sw_cap = kDefaultAnimalCap;
    sweep->add_option("--experiment", experiment, "fig4|table1|bound-compare|oracle-matrix|animal")
        ->required()
        ->check(CLI::IsMember({"fig4", "table1", "bound-compare", "oracle-matrix", "animal"}));
    sweep->add_option("--out", out_path, "output file ('-' for stdout)")->required();
    sweep->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sweep->add_option("--seed", sw_seed, "master seed");
    sweep->add_option("--horizon", sw_horizon, "simulated time per replication");
    sweep->add_option("--reps", sw_reps, "replications per cell");
    sweep->add_option("--batches", sw_batches, "batches per replication");
    sweep->add_option("--warmup", sw_warmup, "warm-up fraction");
    sweep->add_option("--ns", sw_ns, "override the n grid")->delimiter(',');
    sweep->add_option("--alphas", sw_alphas, "override the alpha grid")->delimiter(',');
    std::vector<std::string> sw_reps_at;
    sweep->add_option("--reps-at", sw_reps_at, "fig4 per-alpha replications as ALPHA:REPS, or 'none'")->delimiter(',');
    sw_rates.add_to(sweep);
    sweep->add_option("--estimator", sw_estimator, "conditional|control-variate|time-average")
        ->check(CLI::IsMember({"conditional", "control-variate", "time-average"}));
    sweep->add_option("--factor", sw_criterion.factor, "table1 domination multiple")->capture_default_str();
    sweep->add_option("--log-base", sw_log_base, "table1 log base")->capture_default_str();
    sweep->add_flag("--coefficients", sw_criterion.use_coefficients, "table1: include bound coefficients");
    sweep->add_option("--cap", sw_cap, "animal: largest n accepted")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error("usage", e.what(), 2);
    }

    const auto parse_base = [](const std::string& b) { return b == "e" ? 0.0 : std::stod(b); };

    try {
        ordered_json out;
        if (*bound) {
            const std::int64_t f = eval_f(bound_radius.spec(), bound_n);
            const BoundReport r = recursive_bound(bound_n, f, bound_rates.rates, emit_vector);
            out["n"] = r.n;
            out["f"] = r.f;
            out["f_kind"] = describe(bound_radius.spec());
            out["lambda_e"] = bound_rates.rates.lambda_e;
            out["lambda"] = bound_rates.rates.lambda;
            out["ratio"] = r.ratio;
            out["u1"] = r.u1;
            out["x_sum"] = r.x_sum;
            out["y_sum"] = r.y_sum;
            out["z_sum"] = r.z_sum;
            out["closed_form"] = r.closed_form;
            if (emit_vector) out["u"] = r.u;
        } else if (*simulate_cmd) {
            sim.neighbors = sim_radius.spec();
            sim.rates = sim_rates.rates;
            sim.estimator = parse_estimator(estimator);
            out = estimate_json(simulate(sim));
        } else if (*exact) {
            const ExactSolution sol = solve_exact(exact_n, exact_f, exact_rates.rates, exact_cap);
            out["n"] = exact_n;
            out["f"] = exact_f;
            out["lambda_e"] = exact_rates.rates.lambda_e;
            out["lambda"] = exact_rates.rates.lambda;
            out["v1"] = sol.v1();
            if (exact_table) {
                ordered_json rows = ordered_json::array();
                for (std::uint64_t m = 1; m < sol.table().size(); ++m)
                    rows.push_back({{"set", members_json(NodeSet(m))}, {"v", sol.table()[m]}});
                out["table"] = rows;
            }
        } else if (*animal) {
            const RingTopology topo(animal_n, animal_f);
            ordered_json rows = ordered_json::array();
            const auto report = [&](const AnimalResult& r) {
                const std::int64_t formula = min_incoming_edges_formula(animal_n, animal_f, r.set_size);
                rows.push_back({{"j", r.set_size},
                                {"brute_force_min", r.min_incoming},
                                {"formula", formula},
                                {"equal", r.min_incoming == formula},
                                {"witness", members_json(r.witness)},
                                {"witness_contiguous", topo.contiguous(r.witness)},
                                {"sets_examined", r.sets_examined}});
            };
            if (animal_all) {
                for (const auto& r : min_incoming_by_size(topo, animal_cap)) report(r);
            } else {
                if (j_opt->count() == 0) throw InvalidArgument("animal needs --j or --all");
                report(brute_force_min_incoming(topo, animal_j, animal_cap));
            }
            out["n"] = animal_n;
            out["f"] = animal_f;
            out["results"] = rows;
        } else if (*threshold) {
            criterion.log_base = parse_base(log_base);
            const double th = domination_threshold(th_alpha, criterion);
            out["alpha"] = th_alpha;
            out["scaling_exponent"] = scaling_exponent(th_alpha);
            out["threshold"] = std::isfinite(th) ? ordered_json(th) : ordered_json("inf");
            out["factor"] = criterion.factor;
            out["log_base"] = log_base;
            out["use_coefficients"] = criterion.use_coefficients;
        } else if (*sweep) {
            ExperimentSpec spec = ExperimentSpec::defaults(parse_experiment_kind(experiment));
            spec.output_path = out_path;
            spec.format = parse_output_format(format);
            spec.rates = sw_rates.rates;
            if (sw_seed) spec.sim.seed = *sw_seed;
            if (sw_horizon) spec.sim.horizon = *sw_horizon;
            if (sw_reps) spec.sim.replications = *sw_reps;
            if (sw_batches) spec.sim.batches = *sw_batches;
            if (sw_warmup) spec.sim.warmup_fraction = *sw_warmup;
            if (sw_estimator) spec.sim.estimator = parse_estimator(*sw_estimator);
            if (!sw_ns.empty()) spec.ns = parse_ns(sw_ns);
            if (!sw_alphas.empty()) spec.alphas = sw_alphas;
            if (!sw_reps_at.empty()) spec.replications_by_alpha = parse_reps_at(sw_reps_at);
            sw_criterion.log_base = parse_base(sw_log_base);
            spec.criterion = sw_criterion;
            spec.animal_cap = sw_cap;
            const ResultTable table = run_experiment(spec);
            write_table(table, spec, std::cout);
            if (out_path == "-") return 0;
            out["experiment"] = std::string(to_string(spec.kind));
            out["rows"] = table.rows.size();
            out["out"] = out_path;
            out["format"] = format;
        }
        std::cout << out.dump() << '\n';
        return 0;
    } catch (const InvalidArgument& e) {
        return emit_error("invalid_argument", e.what(), 1);
    } catch (const CapacityExceeded& e) {
        return emit_error("capacity_exceeded", e.what(), 1);
    } catch (const std::exception& e) {
        return emit_error("runtime", e.what(), 1);
    }
}
