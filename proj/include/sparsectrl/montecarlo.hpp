#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsectrl/control.hpp"
#include "sparsectrl/graphs.hpp"
#include "sparsectrl/sparsity.hpp"

namespace sparsectrl {

enum class GraphModel { ErUndirected, ErDirected, PowerLaw };

const char* graph_model_name(GraphModel model);

/// Family recipe that can be instantiated at any ambient dimension. m = 0
/// selects m = s for piecewise/block (one index per piece, one full block).
struct FamilyDescriptor {
    FamilyKind kind = FamilyKind::Unconstrained;
    int s = 1;
    int m = 0;
    std::vector<Support> explicit_sets;

    SupportFamily build(int n) const;
    int resolved_m() const { return m > 0 ? m : s; }
};

enum class TrialStrategy { Auto, Exhaustive, Shortcut, Sampled };

/// One point of the replication protocol: sample a graph and weights, build
/// the system, and test the two controllability conditions.
struct ExperimentConfig {
    GraphModel model = GraphModel::ErUndirected;
    double p = 0.0;     // ER edge probability
    double alpha = 2.5; // power-law exponent
    int n = 12;
    FamilyDescriptor family;
    int trials = 1000;
    std::uint64_t master_seed = 0;
    WeightDist weight_dist = WeightDist::Uniform01;
    RankPolicy policy;
    // Auto resolves to the conclusive shortcut for unconstrained families and
    // exhaustive search otherwise; Sampled is never selected implicitly.
    TrialStrategy strategy = TrialStrategy::Auto;
    int sampled_count = 0;
    // Phi defaults to the row-normalized system; the raw 0/1 adjacency is the
    // literal replication mode (identical rank structure either way).
    bool use_raw_adjacency = false;
    int config_model_max_retries = 100;
    int degree_resample_limit = 100;

    double model_parameter() const { return model == GraphModel::PowerLaw ? alpha : p; }
};

struct SweepRow {
    GraphModel model = GraphModel::ErUndirected;
    int n = 0;
    double p_or_alpha = 0.0;
    std::string family;
    int s = 0;
    int m = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int controllable_count = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson95(int successes, int trials);

/// Controllability of one sampled realization. Deterministic in
/// (config, trial_index): the trial derives its own rng stream and is
/// insensitive to evaluation order.
bool run_trial(const ExperimentConfig& config, int trial_index);

/// Fraction of controllable realizations with Wilson 95% interval. Trials run
/// on up to `threads` workers; the result is identical for any thread count.
SweepRow estimate_probability(const ExperimentConfig& config, int threads = 1);

/// One row per grid point, in the given order. A failing point is marked and
/// the sweep continues.
SweepResult sweep(const std::vector<ExperimentConfig>& grid, int threads = 1);

/// Fraction of sampled binary adjacencies with full numeric rank; the
/// empirical companion of the non-singularity estimates.
SweepRow estimate_nonsingularity(int n, double p, GraphKind model, int trials,
                                 std::uint64_t master_seed, int threads = 1);

} // namespace sparsectrl
