#include "sparsectrl/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "sparsectrl/errors.hpp"
#include "sparsectrl/rng.hpp"

namespace sparsectrl {

const char* graph_model_name(GraphModel model) {
    switch (model) {
        case GraphModel::ErUndirected: return "er-undirected";
        case GraphModel::ErDirected: return "er-directed";
        case GraphModel::PowerLaw: return "power-law";
    }
    return "?";
}

SupportFamily FamilyDescriptor::build(int n) const {
    switch (kind) {
        case FamilyKind::Unconstrained: return SupportFamily::unconstrained(n, s);
        case FamilyKind::Piecewise: return SupportFamily::piecewise(n, s, resolved_m());
        case FamilyKind::Block: return SupportFamily::block(n, s, resolved_m());
        case FamilyKind::Explicit: return SupportFamily::explicit_family(n, explicit_sets);
    }
    throw std::invalid_argument("FamilyDescriptor: unknown kind");
}

WilsonInterval wilson95(int successes, int trials) {
    if (trials < 1) throw std::invalid_argument("wilson95: trials must be positive");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson95: successes out of range");
    const double z = 1.959963984540054; // 97.5th normal quantile
    const double t = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / t;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (phat + z2 / (2.0 * t)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t)) / denom;
    return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

BinaryAdjacency sample_graph(const ExperimentConfig& config, std::mt19937_64& rng) {
    switch (config.model) {
        case GraphModel::ErUndirected:
            return sample_er_undirected(config.n, config.p, rng);
        case GraphModel::ErDirected:
            return sample_er_directed(config.n, config.p, rng);
        case GraphModel::PowerLaw: {
            // Degree resampling after exhausted matchings stays on the same
            // stream, so the trial remains a pure function of its seed.
            for (int round = 0; round < config.degree_resample_limit; ++round) {
                const DegreeSequence degrees = sample_power_law_degrees(
                    config.n, config.alpha, 1, config.n - 1, rng);
                try {
                    return configuration_model(degrees, rng, config.config_model_max_retries);
                } catch (const matching_error&) {
                    continue;
                }
            }
            throw matching_error("run_trial: degree resample limit exhausted");
        }
    }
    throw std::invalid_argument("run_trial: unknown graph model");
}

CheckOptions resolve_options(const ExperimentConfig& config, const SupportFamily& family,
                             int trial_index) {
    CheckOptions options;
    options.policy = config.policy;
    options.sampled_count = config.sampled_count;
    options.sampled_seed = config.master_seed ^ (0xABCDULL + static_cast<std::uint64_t>(trial_index));
    switch (config.strategy) {
        case TrialStrategy::Auto:
            options.strategy = family.kind() == FamilyKind::Unconstrained
                                   ? CondBStrategy::UnconstrainedShortcut
                                   : CondBStrategy::Exhaustive;
            break;
        case TrialStrategy::Exhaustive:
            options.strategy = CondBStrategy::Exhaustive;
            break;
        case TrialStrategy::Shortcut:
            options.strategy = CondBStrategy::UnconstrainedShortcut;
            break;
        case TrialStrategy::Sampled:
            options.strategy = CondBStrategy::Sampled;
            break;
    }
    return options;
}

} // namespace

bool run_trial(const ExperimentConfig& config, int trial_index) {
    if (trial_index < 0 || trial_index >= config.trials)
        throw std::invalid_argument("run_trial: trial index out of range");
    std::mt19937_64 rng = derive_stream(config.master_seed, static_cast<std::uint64_t>(trial_index));

    const BinaryAdjacency adjacency = sample_graph(config, rng);
    const WeightVector weights = sample_weight_vector(config.n, config.weight_dist, rng);

    Eigen::MatrixXd phi;
    if (config.use_raw_adjacency) {
        phi = adjacency.entries.cast<double>();
    } else {
        phi = row_normalize(adjacency, weights).a_bar;
    }

    const SupportFamily family = config.family.build(config.n);
    const LinearSystem system = LinearSystem::opinion(std::move(phi));
    const CheckOptions options = resolve_options(config, family, trial_index);
    return is_sparse_controllable(system, family, options).controllable;
}

namespace {

template <typename TrialFn>
int count_successes(int trials, int threads, TrialFn&& trial) {
    threads = std::max(1, threads);
    if (threads == 1) {
        int count = 0;
        for (int t = 0; t < trials; ++t)
            if (trial(t)) ++count;
        return count;
    }
    std::atomic<int> count{0};
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&]() {
            try {
                for (;;) {
                    const int t = next.fetch_add(1);
                    if (t >= trials) return;
                    if (trial(t)) count.fetch_add(1);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& worker : pool) worker.join();
    if (first_error) std::rethrow_exception(first_error);
    return count.load();
}

} // namespace

SweepRow estimate_probability(const ExperimentConfig& config, int threads) {
    if (config.trials < 1) throw std::invalid_argument("estimate_probability: trials >= 1");
    SweepRow row;
    row.model = config.model;
    row.n = config.n;
    row.p_or_alpha = config.model_parameter();
    row.family = family_kind_name(config.family.kind);
    row.s = config.family.s;
    row.m = config.family.kind == FamilyKind::Unconstrained ||
                    config.family.kind == FamilyKind::Explicit
                ? 0
                : config.family.resolved_m();
    row.trials = config.trials;
    row.seed = config.master_seed;

    row.controllable_count =
        count_successes(config.trials, threads, [&](int t) { return run_trial(config, t); });
    row.p_hat = static_cast<double>(row.controllable_count) / config.trials;
    const WilsonInterval ci = wilson95(row.controllable_count, config.trials);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    return row;
}

SweepResult sweep(const std::vector<ExperimentConfig>& grid, int threads) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    SweepResult result;
    result.rows.reserve(grid.size());
    for (const ExperimentConfig& config : grid) {
        try {
            result.rows.push_back(estimate_probability(config, threads));
        } catch (const std::exception& e) {
            SweepRow row;
            row.model = config.model;
            row.n = config.n;
            row.p_or_alpha = config.model_parameter();
            row.family = family_kind_name(config.family.kind);
            row.s = config.family.s;
            row.trials = config.trials;
            row.seed = config.master_seed;
            row.failed = true;
            row.error = e.what();
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

SweepRow estimate_nonsingularity(int n, double p, GraphKind model, int trials,
                                 std::uint64_t master_seed, int threads) {
    if (n < 1) throw std::invalid_argument("estimate_nonsingularity: n must be positive");
    if (trials < 1) throw std::invalid_argument("estimate_nonsingularity: trials >= 1");
    const RankPolicy policy;
    const int count = count_successes(trials, threads, [&](int t) {
        if (n == 1) return false; // the 1x1 adjacency is identically zero
        std::mt19937_64 rng = derive_stream(master_seed, static_cast<std::uint64_t>(t));
        const BinaryAdjacency adjacency = model == GraphKind::Undirected
                                              ? sample_er_undirected(n, p, rng)
                                              : sample_er_directed(n, p, rng);
        const Eigen::MatrixXd dense = adjacency.entries.cast<double>();
        return numeric_rank(dense, policy) == n;
    });
    SweepRow row;
    row.model = model == GraphKind::Undirected ? GraphModel::ErUndirected
                                               : GraphModel::ErDirected;
    row.n = n;
    row.p_or_alpha = p;
    row.family = "nonsingularity";
    row.s = 0;
    row.m = 0;
    row.trials = trials;
    row.seed = master_seed;
    row.controllable_count = count;
    row.p_hat = static_cast<double>(count) / trials;
    const WilsonInterval ci = wilson95(count, trials);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    return row;
}

} // namespace sparsectrl
