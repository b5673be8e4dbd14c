#include "sparsectrl/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "sparsectrl/errors.hpp"

namespace sparsectrl {

namespace {

void check_edge_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0, 1]");
}

void check_node_count(int n) {
    if (n < 2) throw std::invalid_argument("graph sampling requires n >= 2");
}

} // namespace

int BinaryAdjacency::edge_count() const {
    const int total = entries.sum();
    return directed ? total : total / 2;
}

long long DegreeSequence::sum() const {
    return std::accumulate(degrees.begin(), degrees.end(), 0LL);
}

const char* weight_dist_name(WeightDist dist) {
    switch (dist) {
        case WeightDist::Uniform01: return "uniform";
        case WeightDist::Exponential1: return "exponential";
        case WeightDist::LogNormal01: return "lognormal";
    }
    return "?";
}

BinaryAdjacency sample_er_undirected(int n, double p, std::mt19937_64& rng) {
    check_node_count(n);
    check_edge_probability(p);
    BinaryAdjacency adj{n, false, Eigen::MatrixXi::Zero(n, n)};
    std::bernoulli_distribution edge(p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            if (edge(rng)) {
                adj.entries(i, j) = 1;
                adj.entries(j, i) = 1;
            }
        }
    }
    return adj;
}

BinaryAdjacency sample_er_directed(int n, double p, std::mt19937_64& rng) {
    check_node_count(n);
    check_edge_probability(p);
    BinaryAdjacency adj{n, true, Eigen::MatrixXi::Zero(n, n)};
    std::bernoulli_distribution edge(p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && edge(rng)) adj.entries(i, j) = 1;
    return adj;
}

DegreeSequence sample_power_law_degrees(int n, double alpha, int k_min, int k_max,
                                        std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("sample_power_law_degrees: n must be positive");
    if (!(alpha > 1.0)) throw std::invalid_argument("sample_power_law_degrees: alpha must exceed 1");
    if (k_min < 1 || k_max > n - 1 || k_min > k_max)
        throw std::invalid_argument("sample_power_law_degrees: require 1 <= k_min <= k_max <= n-1");

    // Inverse-CDF table over the integer support.
    std::vector<double> cumulative(static_cast<std::size_t>(k_max - k_min + 1));
    double mass = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        mass += std::pow(static_cast<double>(k), -alpha);
        cumulative[static_cast<std::size_t>(k - k_min)] = mass;
    }
    for (double& c : cumulative) c /= mass;
    cumulative.back() = 1.0;

    DegreeSequence seq{n, std::vector<int>(static_cast<std::size_t>(n))};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        const double u = unit(rng);
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        seq.degrees[static_cast<std::size_t>(i)] =
            k_min + static_cast<int>(std::distance(cumulative.begin(), it));
    }

    if (seq.sum() % 2 != 0) {
        if (std::all_of(seq.degrees.begin(), seq.degrees.end(),
                        [&](int d) { return d >= k_max; }))
            throw matching_error("sample_power_law_degrees: odd degree sum with no node below k_max");
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (;;) {
            const int node = pick(rng);
            if (seq.degrees[static_cast<std::size_t>(node)] < k_max) {
                ++seq.degrees[static_cast<std::size_t>(node)];
                break;
            }
        }
    }
    return seq;
}

BinaryAdjacency configuration_model(const DegreeSequence& degrees, std::mt19937_64& rng,
                                    int max_retries) {
    if (degrees.n < 2) throw std::invalid_argument("configuration_model: require n >= 2");
    if (max_retries < 1) throw std::invalid_argument("configuration_model: max_retries >= 1");
    if (degrees.sum() % 2 != 0)
        throw std::invalid_argument("configuration_model: degree sum must be even");
    for (int d : degrees.degrees)
        if (d < 1 || d > degrees.n - 1)
            throw std::invalid_argument("configuration_model: degrees must lie in [1, n-1]");

    const int n = degrees.n;
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(degrees.sum()));
    for (int i = 0; i < n; ++i)
        for (int d = 0; d < degrees.degrees[static_cast<std::size_t>(i)]; ++d) stubs.push_back(i);

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        Eigen::MatrixXi entries = Eigen::MatrixXi::Zero(n, n);
        bool simple = true;
        for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
            const int u = stubs[k];
            const int v = stubs[k + 1];
            if (u == v || entries(u, v) != 0) {
                simple = false;
                break;
            }
            entries(u, v) = 1;
            entries(v, u) = 1;
        }
        if (simple) return BinaryAdjacency{n, false, std::move(entries)};
    }
    throw matching_error("configuration_model: retries exhausted, resample the degree sequence");
}

WeightVector sample_weight_vector(int n, WeightDist dist, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("sample_weight_vector: n must be positive");
    WeightVector out{n, Eigen::VectorXd(n)};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::lognormal_distribution<double> logn(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        double value = 0.0;
        do {
            switch (dist) {
                case WeightDist::Uniform01: value = 1.0 - unit(rng); break; // (0, 1]
                case WeightDist::Exponential1: value = expo(rng); break;
                case WeightDist::LogNormal01: value = logn(rng); break;
            }
        } while (value <= 0.0);
        out.w(i) = value;
    }
    return out;
}

RowNormalizedSystem row_normalize(const BinaryAdjacency& adj, const WeightVector& w) {
    if (adj.n != w.n) throw std::invalid_argument("row_normalize: dimension mismatch");
    const int n = adj.n;
    Eigen::MatrixXd a_bar(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a_bar(i, j) = adj.entries(i, j) != 0 ? w.w(i) * w.w(j) : 0.0;
    for (int i = 0; i < n; ++i) {
        const double row_sum = a_bar.row(i).sum();
        if (row_sum > 0.0) a_bar.row(i) /= row_sum;
    }
    return RowNormalizedSystem{n, std::move(a_bar), adj, w};
}

RowNormalizedSystem row_normalize_uniform(const BinaryAdjacency& adj) {
    WeightVector ones{adj.n, Eigen::VectorXd::Ones(adj.n)};
    return row_normalize(adj, ones);
}

} // namespace sparsectrl
