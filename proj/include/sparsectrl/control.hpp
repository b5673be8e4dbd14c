#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsectrl/sparsity.hpp"

namespace sparsectrl {

/// Discrete-time pair alpha_k = Phi alpha_{k-1} + Psi v_k. The opinion
/// instantiation uses Phi = A_bar and Psi = I.
struct LinearSystem {
    Eigen::MatrixXd phi;
    Eigen::MatrixXd psi;

    int state_dim() const { return static_cast<int>(phi.rows()); }
    int input_dim() const { return static_cast<int>(psi.cols()); }
    bool psi_is_identity() const;

    static LinearSystem opinion(Eigen::MatrixXd a_bar);
};

/// Numerical rank by singular-value thresholding: rank = #{sigma_i > factor *
/// sigma_max}. factor = 0 resolves to max(rows, cols) * machine epsilon.
struct RankPolicy {
    double factor = 0.0;

    double resolve_factor(int rows, int cols) const;
};

/// Rank plus the margin diagnostics callers use to audit borderline verdicts.
struct RankReport {
    int rank = 0;
    double threshold = 0.0;
    double smallest_kept = 0.0; // smallest singular value counted toward the rank
};

RankReport numeric_rank_report(const Eigen::MatrixXd& matrix, const RankPolicy& policy);
RankReport numeric_rank_report(const Eigen::MatrixXcd& matrix, const RankPolicy& policy);
int numeric_rank(const Eigen::MatrixXd& matrix, const RankPolicy& policy);
int numeric_rank(const Eigen::MatrixXcd& matrix, const RankPolicy& policy);

enum class CondBStrategy { Exhaustive, UnconstrainedShortcut, Sampled };

struct CheckOptions {
    RankPolicy policy;
    CondBStrategy strategy = CondBStrategy::Exhaustive;
    int sampled_count = 0;          // number of supports drawn by Sampled
    std::uint64_t sampled_seed = 0; // stream seed for Sampled draws
};

struct EigenvalueMargin {
    std::complex<double> lambda;
    double min_singular_value = 0.0;
};

struct ConditionAResult {
    bool holds = false;
    bool short_circuit = false; // Psi_M alone spans R^n, no eigensolve needed
    std::vector<EigenvalueMargin> margins;
};

struct ConditionBResult {
    bool holds = false;
    std::optional<Support> witness;
    double witness_margin = 0.0; // smallest singular value certifying the witness
    bool inconclusive = false;   // Sampled found no witness; not a disproof
    std::string strategy;
};

struct ControllabilityVerdict {
    bool cond_a = false;
    bool cond_b = false;
    bool controllable = false;
    std::optional<Support> witness;
    ConditionAResult cond_a_detail;
    ConditionBResult cond_b_detail;
    double rank_tolerance_factor = 0.0; // resolved threshold factor on the n x n block
};

/// PBH-style test over the spectrum: rank [lambda I - Phi, Psi_M] = n for one
/// representative lambda per eigenvalue cluster (absolute tolerance 1e-8).
/// Short-circuits without eigensolving when Psi_M already has rank n.
ConditionAResult condition_a(const LinearSystem& system, const SupportFamily& family,
                             const RankPolicy& policy);

/// Existence of S in U with rank [Phi, Psi_S] = n. With Psi = I this reduces
/// to full row rank of the complementary row submatrix Phi_{S^c,:}. The
/// UnconstrainedShortcut (Unconstrained + Psi = I only) tests
/// rank(Phi) >= n - s and reconstructs a witness from pivoted QR.
ConditionBResult condition_b(const LinearSystem& system, const SupportFamily& family,
                             const CheckOptions& options);

ControllabilityVerdict is_sparse_controllable(const LinearSystem& system,
                                              const SupportFamily& family,
                                              const CheckOptions& options = {});

/// Exact reachability oracle: true iff some support sequence S_1..S_K with
/// K <= k_max makes [Phi^{K-1} Psi_{S_1}, ..., Psi_{S_K}] full row rank.
/// Explores the reachable subspaces breadth-first with deduplication, which
/// covers exactly the support sequences up to length k_max. k_max <= 0 selects
/// the default n * |U|. Guarded to n <= 4 and a bounded exploration budget.
bool brute_force_controllable(const LinearSystem& system, const SupportFamily& family,
                              int k_max = 0, const RankPolicy& policy = {});

} // namespace sparsectrl
