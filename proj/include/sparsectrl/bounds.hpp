#pragma once

#include <vector>

#include "sparsectrl/graphs.hpp"
#include "sparsectrl/sparsity.hpp"

namespace sparsectrl {

/// Universal constants of the probability bounds. The theory leaves them
/// unspecified; these defaults are heuristic placeholders and every consumer
/// labels them as such.
struct BoundParams {
    double big_c = 1.0;
    double small_c = 1.0;
};

struct BoundResult {
    double q = 0.0;     // clamped to [0, 1]
    double raw_q = 0.0; // sum before clamping; may exceed 1 under heuristic constants
    bool valid = false; // p lies in the admissible range of the theorem
    std::vector<double> terms; // per-i contributions, i = 0..s; they sum to raw_q
};

/// Lower-bound evaluation for undirected graphs:
/// q = sum_{i=0}^{s} Q(i,U) (1-p)^{i(2N-i-1)/2} [1 - C exp(-c (p(N-i))^{1/32})],
/// admissible for (N-s)^{-1} <= p <= 1 - (N-s)^{-1}. Requires the family to
/// cover all N indices.
BoundResult undirected_bound(int n, int s, double p, const SupportFamily& family,
                             const BoundParams& params = {});

/// Directed variant:
/// q = sum_{i=0}^{s} Q(i,U) (1-p)^{i(N-1)} [1 - exp(-c p (N-i))],
/// admissible for C log(N-s)/(N-s) < p <= 1 - C log(N-s)/(N-s).
BoundResult directed_bound(int n, int s, double p, const SupportFamily& family,
                           const BoundParams& params = {});

/// Constant-free variant with every bracket set to 1, clamped to [0, 1]; for
/// qualitative comparisons only.
double structural_bound(int n, int s, double p, const SupportFamily& family, GraphKind model);

} // namespace sparsectrl
