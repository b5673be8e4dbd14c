#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sparsectrl/errors.hpp"
#include "sparsectrl/montecarlo.hpp"

using namespace sparsectrl;

namespace {

ExperimentConfig base_config() {
    ExperimentConfig config;
    config.model = GraphModel::ErUndirected;
    config.n = 12;
    config.p = 0.4;
    config.family = FamilyDescriptor{FamilyKind::Unconstrained, 3, 0, {}};
    config.trials = 200;
    config.master_seed = 777;
    return config;
}

} // namespace

TEST_CASE("wilson interval brackets the point estimate") {
    for (int successes : {0, 1, 57, 199, 200}) {
        const auto ci = wilson95(successes, 200);
        const double phat = successes / 200.0;
        CHECK(ci.low <= phat + 1e-15);
        CHECK(ci.high >= phat - 1e-15);
        CHECK(ci.low >= 0.0);
        CHECK(ci.high <= 1.0);
    }
    CHECK(wilson95(200, 200).high == doctest::Approx(1.0));
    CHECK(wilson95(0, 200).low == doctest::Approx(0.0));
    CHECK_THROWS_AS(wilson95(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson95(7, 5), std::invalid_argument);
}

TEST_CASE("run_trial is deterministic in (config, trial_index)") {
    const auto config = base_config();
    for (int t = 0; t < 10; ++t) CHECK(run_trial(config, t) == run_trial(config, t));
    CHECK_THROWS_AS(run_trial(config, config.trials), std::invalid_argument);
}

TEST_CASE("degenerate p: certainty without sampling noise") {
    auto config = base_config();
    config.trials = 300;
    for (const auto model : {GraphModel::ErUndirected, GraphModel::ErDirected}) {
        config.model = model;
        config.p = 1.0;
        for (int s : {1, 2, 3}) {
            config.family.s = s;
            for (const auto kind :
                 {FamilyKind::Unconstrained, FamilyKind::Piecewise, FamilyKind::Block}) {
                config.family.kind = kind;
                const auto row = estimate_probability(config, 2);
                CHECK(row.p_hat == 1.0);
                CHECK(row.ci_high == doctest::Approx(1.0));
            }
        }
        config.p = 0.0;
        config.family.kind = FamilyKind::Unconstrained;
        config.family.s = 3;
        const auto row = estimate_probability(config, 2);
        CHECK(row.p_hat == 0.0);
    }
}

TEST_CASE("estimates are identical for every thread count") {
    auto config = base_config();
    config.trials = 150;
    const auto serial = estimate_probability(config, 1);
    const auto threaded = estimate_probability(config, 3);
    CHECK(serial.controllable_count == threaded.controllable_count);
    CHECK(serial.p_hat == threaded.p_hat);
    CHECK(serial.ci_low == threaded.ci_low);
    CHECK(serial.ci_high == threaded.ci_high);
}

TEST_CASE("raw-adjacency mode agrees with the normalized default per trial") {
    // Lambda and diag(w) are invertible, so the rank structure is unchanged.
    auto config = base_config();
    config.trials = 120;
    auto raw = config;
    raw.use_raw_adjacency = true;
    for (int t = 0; t < config.trials; ++t) CHECK(run_trial(config, t) == run_trial(raw, t));
}

TEST_CASE("auto strategy matches exhaustive for unconstrained families") {
    auto config = base_config();
    config.trials = 100;
    auto exhaustive = config;
    exhaustive.strategy = TrialStrategy::Exhaustive;
    for (int t = 0; t < config.trials; ++t)
        CHECK(run_trial(config, t) == run_trial(exhaustive, t));
}

TEST_CASE("probability grows with the budget (self-consistency)") {
    auto config = base_config();
    config.p = 0.4;
    config.trials = 400;
    config.family.s = 2;
    const auto row2 = estimate_probability(config, 2);
    config.family.s = 3;
    const auto row3 = estimate_probability(config, 2);
    const auto se = [](const SweepRow& row) {
        return std::sqrt(std::max(row.p_hat * (1.0 - row.p_hat), 1e-9) / row.trials);
    };
    const double combined = std::hypot(se(row2), se(row3));
    CHECK(row3.p_hat >= row2.p_hat - 2.0 * combined);
}

TEST_CASE("power-law trials run and stay deterministic") {
    ExperimentConfig config;
    config.model = GraphModel::PowerLaw;
    config.alpha = 2.5;
    config.n = 24;
    config.family = FamilyDescriptor{FamilyKind::Unconstrained, 3, 0, {}};
    config.trials = 60;
    config.master_seed = 4242;
    const auto a = estimate_probability(config, 2);
    const auto b = estimate_probability(config, 2);
    CHECK(a.controllable_count == b.controllable_count);
    CHECK(a.p_hat >= 0.0);
    CHECK(a.p_hat <= 1.0);
    CHECK(a.p_or_alpha == doctest::Approx(2.5));
}

TEST_CASE("sweep emits one row per grid point and keeps going on failures") {
    std::vector<ExperimentConfig> grid;
    for (const double p : {0.2, 0.5, 1.0}) {
        auto config = base_config();
        config.p = p;
        config.trials = 50;
        grid.push_back(config);
    }
    // Invalid family for this n: piecewise with m = s = 5 does not divide 12.
    auto bad = base_config();
    bad.family = FamilyDescriptor{FamilyKind::Piecewise, 5, 0, {}};
    bad.trials = 10;
    grid.push_back(bad);

    const auto result = sweep(grid, 2);
    REQUIRE(result.rows.size() == 4);
    for (int i = 0; i < 3; ++i) {
        CHECK_FALSE(result.rows[static_cast<std::size_t>(i)].failed);
        CHECK(result.rows[static_cast<std::size_t>(i)].trials == 50);
    }
    CHECK(result.rows[3].failed);
    CHECK_FALSE(result.rows[3].error.empty());
    CHECK_THROWS_AS(sweep({}, 1), std::invalid_argument);
}

TEST_CASE("nonsingularity estimator: forced cases") {
    // n = 2, p = 1: the adjacency is the swap matrix, always invertible.
    const auto certain = estimate_nonsingularity(2, 1.0, GraphKind::Undirected, 50, 9);
    CHECK(certain.p_hat == 1.0);
    // n = 1: the only adjacency is the 1x1 zero matrix.
    const auto singular = estimate_nonsingularity(1, 0.7, GraphKind::Directed, 50, 9);
    CHECK(singular.p_hat == 0.0);
}

TEST_CASE("nonsingularity estimator: dense undirected graphs are usually invertible") {
    const auto row = estimate_nonsingularity(30, 0.5, GraphKind::Undirected, 400, 31);
    CHECK(row.p_hat >= 0.9);
    const auto again = estimate_nonsingularity(30, 0.5, GraphKind::Undirected, 400, 31, 2);
    CHECK(row.controllable_count == again.controllable_count);
}
