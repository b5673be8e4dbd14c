#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace sparsectrl {

enum class GraphKind { Undirected, Directed };

/// Sampled 0/1 adjacency matrix with zero diagonal; symmetric when undirected.
struct BinaryAdjacency {
    int n = 0;
    bool directed = false;
    Eigen::MatrixXi entries;

    int edge_count() const;
};

/// Strictly positive edge-weight profile; the system uses the rank-one
/// weight matrix w * w^T.
struct WeightVector {
    int n = 0;
    Eigen::VectorXd w;
};

/// Row-normalized weighted system matrix: each nonzero row of the weighted
/// adjacency is scaled to sum 1, all-zero rows stay zero.
struct RowNormalizedSystem {
    int n = 0;
    Eigen::MatrixXd a_bar;
    BinaryAdjacency source_adjacency;
    WeightVector source_weights;
};

struct DegreeSequence {
    int n = 0;
    std::vector<int> degrees;

    long long sum() const;
};

enum class WeightDist { Uniform01, Exponential1, LogNormal01 };

const char* weight_dist_name(WeightDist dist);

/// Undirected G(n, p): independent Bernoulli(p) below the diagonal, mirrored.
BinaryAdjacency sample_er_undirected(int n, double p, std::mt19937_64& rng);

/// Directed G(n, p): independent Bernoulli(p) on every off-diagonal entry.
BinaryAdjacency sample_er_directed(int n, double p, std::mt19937_64& rng);

/// Degrees drawn iid with P(k) proportional to k^-alpha on [k_min, k_max].
/// An odd degree sum is repaired by incrementing one uniformly chosen node
/// (re-chosen while the pick is already at k_max).
DegreeSequence sample_power_law_degrees(int n, double alpha, int k_min, int k_max,
                                        std::mt19937_64& rng);

/// Uniform random stub matching, restarted from scratch whenever the pairing
/// produces a self-loop or parallel edge. Throws matching_error after
/// max_retries restarts so the caller can resample the degree sequence.
BinaryAdjacency configuration_model(const DegreeSequence& degrees, std::mt19937_64& rng,
                                    int max_retries = 100);

WeightVector sample_weight_vector(int n, WeightDist dist, std::mt19937_64& rng);

/// A_bar = Lambda (A ⊙ w w^T), with Lambda_ii the reciprocal row sum for
/// nonzero rows and 1 for all-zero rows.
RowNormalizedSystem row_normalize(const BinaryAdjacency& adj, const WeightVector& w);

/// Convenience for unit-weight normalization (w identically one).
RowNormalizedSystem row_normalize_uniform(const BinaryAdjacency& adj);

} // namespace sparsectrl
