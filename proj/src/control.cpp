#include "sparsectrl/control.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "sparsectrl/errors.hpp"
#include "sparsectrl/rng.hpp"

namespace sparsectrl {

namespace {

constexpr double kEigenClusterTol = 1e-8;
constexpr std::uint64_t kExhaustiveCapacity = 10'000'000ULL;
constexpr std::uint64_t kBruteForceBudget = 1'000'000ULL;

template <typename Matrix>
RankReport rank_report_impl(const Matrix& matrix, const RankPolicy& policy) {
    RankReport report;
    if (matrix.rows() == 0 || matrix.cols() == 0) return report;
    Eigen::JacobiSVD<Matrix> svd(matrix);
    if (svd.info() != Eigen::Success)
        throw numerical_error("numeric_rank: SVD did not converge");
    const auto& sv = svd.singularValues();
    const double factor =
        policy.resolve_factor(static_cast<int>(matrix.rows()), static_cast<int>(matrix.cols()));
    report.threshold = factor * sv(0);
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > report.threshold) {
            ++report.rank;
            report.smallest_kept = sv(i);
        }
    }
    return report;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const Support& cols) {
    Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
    return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<int>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
    return out;
}

Support complement(const Support& set, int n) {
    Support out;
    out.reserve(static_cast<std::size_t>(n) - set.size());
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        if (k < set.size() && set[k] == i) {
            ++k;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

// [Phi, Psi_S] has rank n iff Phi_{S^c,:} has full row rank when Psi = I
// (permute the rows of S to the top: the identity columns become [I; 0]).
bool witness_certifies(const LinearSystem& system, const Support& support,
                       const RankPolicy& policy, double* margin) {
    const int n = system.state_dim();
    if (system.psi_is_identity()) {
        const Support rest = complement(support, n);
        if (rest.empty()) {
            if (margin) *margin = std::numeric_limits<double>::infinity();
            return true;
        }
        const RankReport report = rank_report_impl(select_rows(system.phi, rest), policy);
        if (margin) *margin = report.rank == static_cast<int>(rest.size()) ? report.smallest_kept : 0.0;
        return report.rank == static_cast<int>(rest.size());
    }
    Eigen::MatrixXd stacked(n, n + static_cast<Eigen::Index>(support.size()));
    stacked.leftCols(n) = system.phi;
    stacked.rightCols(static_cast<Eigen::Index>(support.size())) =
        select_columns(system.psi, support);
    const RankReport report = rank_report_impl(stacked, policy);
    if (margin) *margin = report.rank == n ? report.smallest_kept : 0.0;
    return report.rank == n;
}

} // namespace

bool LinearSystem::psi_is_identity() const {
    if (psi.rows() != psi.cols()) return false;
    return psi == Eigen::MatrixXd::Identity(psi.rows(), psi.cols());
}

LinearSystem LinearSystem::opinion(Eigen::MatrixXd a_bar) {
    const Eigen::Index n = a_bar.rows();
    return LinearSystem{std::move(a_bar), Eigen::MatrixXd::Identity(n, n)};
}

double RankPolicy::resolve_factor(int rows, int cols) const {
    if (factor > 0.0) return factor;
    return std::max(rows, cols) * std::numeric_limits<double>::epsilon();
}

RankReport numeric_rank_report(const Eigen::MatrixXd& matrix, const RankPolicy& policy) {
    return rank_report_impl(matrix, policy);
}

RankReport numeric_rank_report(const Eigen::MatrixXcd& matrix, const RankPolicy& policy) {
    return rank_report_impl(matrix, policy);
}

int numeric_rank(const Eigen::MatrixXd& matrix, const RankPolicy& policy) {
    return rank_report_impl(matrix, policy).rank;
}

int numeric_rank(const Eigen::MatrixXcd& matrix, const RankPolicy& policy) {
    return rank_report_impl(matrix, policy).rank;
}

ConditionAResult condition_a(const LinearSystem& system, const SupportFamily& family,
                             const RankPolicy& policy) {
    const int n = system.state_dim();
    if (family.n() != system.input_dim())
        throw std::invalid_argument("condition_a: family ambient dimension must match input count");

    const Support member_union = family.union_of_members();
    const Eigen::MatrixXd psi_union = select_columns(system.psi, member_union);

    ConditionAResult result;
    if (numeric_rank(psi_union, policy) == n) {
        // Psi_M alone spans R^n, so [lambda I - Phi, Psi_M] has rank n for
        // every lambda.
        result.holds = true;
        result.short_circuit = true;
        return result;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(system.phi, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw numerical_error("condition_a: eigensolver did not converge");

    // One representative per cluster of nearby eigenvalues.
    std::vector<std::complex<double>> representatives;
    for (int i = 0; i < n; ++i) {
        const std::complex<double> lambda = solver.eigenvalues()(i);
        const bool seen = std::any_of(representatives.begin(), representatives.end(),
                                      [&](const std::complex<double>& mu) {
                                          return std::abs(mu - lambda) <= kEigenClusterTol;
                                      });
        if (!seen) representatives.push_back(lambda);
    }

    result.holds = true;
    const Eigen::MatrixXcd phi_c = system.phi.cast<std::complex<double>>();
    const Eigen::MatrixXcd psi_c = psi_union.cast<std::complex<double>>();
    for (const std::complex<double>& lambda : representatives) {
        Eigen::MatrixXcd pencil(n, n + psi_c.cols());
        pencil.leftCols(n) =
            lambda * Eigen::MatrixXcd::Identity(n, n) - phi_c;
        pencil.rightCols(psi_c.cols()) = psi_c;
        const RankReport report = rank_report_impl(pencil, policy);
        result.margins.push_back({lambda, report.smallest_kept});
        if (report.rank < n) result.holds = false;
    }
    return result;
}

ConditionBResult condition_b(const LinearSystem& system, const SupportFamily& family,
                             const CheckOptions& options) {
    const int n = system.state_dim();
    if (family.n() != system.input_dim())
        throw std::invalid_argument("condition_b: family ambient dimension must match input count");

    ConditionBResult result;
    switch (options.strategy) {
        case CondBStrategy::Exhaustive: {
            result.strategy = "exhaustive";
            if (family_size(family) > kExhaustiveCapacity)
                throw capacity_error(
                    "condition_b: family too large for exhaustive search; use the shortcut or "
                    "sampled strategy");
            SupportEnumerator en(family);
            Support candidate;
            while (en.next(candidate)) {
                double margin = 0.0;
                if (witness_certifies(system, candidate, options.policy, &margin)) {
                    result.holds = true;
                    result.witness = candidate;
                    result.witness_margin = margin;
                    return result;
                }
            }
            return result;
        }
        case CondBStrategy::UnconstrainedShortcut: {
            result.strategy = "unconstrained-shortcut";
            if (family.kind() != FamilyKind::Unconstrained || !system.psi_is_identity())
                throw std::invalid_argument(
                    "condition_b: shortcut requires an unconstrained family and Psi = I");
            const int s = family.s();
            if (numeric_rank(system.phi, options.policy) < n - s) return result;
            // rank(Phi) >= n - s: pivoted QR on Phi^T picks n - s linearly
            // independent rows; their complement is a certifying support.
            Support support;
            if (s == n) {
                support = complement({}, n);
            } else {
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system.phi.transpose());
                std::vector<int> pivot_rows(static_cast<std::size_t>(n - s));
                for (int i = 0; i < n - s; ++i)
                    pivot_rows[static_cast<std::size_t>(i)] =
                        static_cast<int>(qr.colsPermutation().indices()(i));
                std::sort(pivot_rows.begin(), pivot_rows.end());
                support = complement(pivot_rows, n);
            }
            double margin = 0.0;
            if (!witness_certifies(system, support, options.policy, &margin))
                throw numerical_error(
                    "condition_b: shortcut witness failed verification (borderline rank)");
            result.holds = true;
            result.witness = std::move(support);
            result.witness_margin = margin;
            return result;
        }
        case CondBStrategy::Sampled: {
            result.strategy = "sampled";
            if (options.sampled_count < 1)
                throw std::invalid_argument("condition_b: sampled strategy needs sampled_count >= 1");
            const std::uint64_t size = family_size(family);
            std::mt19937_64 rng = derive_stream(options.sampled_seed, 0x5eedULL);
            std::uniform_int_distribution<std::uint64_t> pick(0, size - 1);
            for (int k = 0; k < options.sampled_count; ++k) {
                const Support candidate = support_at(family, pick(rng));
                double margin = 0.0;
                if (witness_certifies(system, candidate, options.policy, &margin)) {
                    result.holds = true;
                    result.witness = candidate;
                    result.witness_margin = margin;
                    return result;
                }
            }
            // A miss is only "no witness found" among the sampled supports.
            result.inconclusive = true;
            return result;
        }
    }
    return result;
}

ControllabilityVerdict is_sparse_controllable(const LinearSystem& system,
                                              const SupportFamily& family,
                                              const CheckOptions& options) {
    const int n = system.state_dim();
    ControllabilityVerdict verdict;
    verdict.rank_tolerance_factor = options.policy.resolve_factor(n, n);

    if (family.s() == n && system.psi_is_identity()) {
        // Full-budget inputs with Psi = I steer directly; the only admissible
        // support is {0..n-1}.
        Support full;
        full.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) full.push_back(i);
        verdict.cond_a = verdict.cond_b = verdict.controllable = true;
        verdict.witness = full;
        verdict.cond_a_detail.holds = true;
        verdict.cond_a_detail.short_circuit = true;
        verdict.cond_b_detail.holds = true;
        verdict.cond_b_detail.witness = std::move(full);
        verdict.cond_b_detail.witness_margin = 1.0;
        verdict.cond_b_detail.strategy = "full-budget";
        return verdict;
    }

    verdict.cond_a_detail = condition_a(system, family, options.policy);
    verdict.cond_a = verdict.cond_a_detail.holds;
    verdict.cond_b_detail = condition_b(system, family, options);
    verdict.cond_b = verdict.cond_b_detail.holds;
    verdict.controllable = verdict.cond_a && verdict.cond_b;
    if (verdict.controllable) verdict.witness = verdict.cond_b_detail.witness;
    return verdict;
}

namespace {

// Orthonormal basis of the column span, thresholded by the rank policy.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& columns, const RankPolicy& policy) {
    if (columns.cols() == 0) return Eigen::MatrixXd(columns.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double factor =
        policy.resolve_factor(static_cast<int>(columns.rows()), static_cast<int>(columns.cols()));
    const double threshold = sv.size() > 0 ? factor * sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    return svd.matrixU().leftCols(rank);
}

} // namespace

bool brute_force_controllable(const LinearSystem& system, const SupportFamily& family,
                              int k_max, const RankPolicy& policy) {
    const int n = system.state_dim();
    if (n > 4) throw capacity_error("brute_force_controllable: guarded to n <= 4");
    if (family.n() != system.input_dim())
        throw std::invalid_argument("brute_force_controllable: family/input dimension mismatch");

    const std::uint64_t p = family_size(family);
    if (k_max <= 0) {
        const std::uint64_t def = static_cast<std::uint64_t>(n) * p;
        k_max = def > 1'000'000ULL ? 1'000'000 : static_cast<int>(def);
    }

    std::vector<Eigen::MatrixXd> psi_blocks;
    {
        SupportEnumerator en(family);
        Support member;
        while (en.next(member)) psi_blocks.push_back(select_columns(system.psi, member));
    }

    // Reachable column spans of the stacked matrices, found breadth-first:
    // a sequence S_1..S_K spans V_K where V_k = Phi V_{k-1} + range(Psi_{S_k}).
    // Deduplicating subspaces (via projection matrices) visits every span that
    // any support sequence of length <= k_max can produce.
    std::vector<Eigen::MatrixXd> seen_projections;
    std::vector<Eigen::MatrixXd> frontier;
    const double dedup_tol = 1e-9;
    std::uint64_t explored = 0;

    auto consider = [&](const Eigen::MatrixXd& columns, std::vector<Eigen::MatrixXd>& out) {
        const Eigen::MatrixXd basis = orthonormal_span(columns, policy);
        if (basis.cols() == n) return true;
        const Eigen::MatrixXd projection = basis * basis.transpose();
        for (const Eigen::MatrixXd& q : seen_projections)
            if ((q - projection).norm() <= dedup_tol) return false;
        seen_projections.push_back(projection);
        out.push_back(basis);
        return false;
    };

    for (const Eigen::MatrixXd& block : psi_blocks) {
        ++explored;
        if (consider(block, frontier)) return true;
    }

    for (int level = 2; level <= k_max && !frontier.empty(); ++level) {
        std::vector<Eigen::MatrixXd> next;
        for (const Eigen::MatrixXd& basis : frontier) {
            const Eigen::MatrixXd advanced = system.phi * basis;
            for (const Eigen::MatrixXd& block : psi_blocks) {
                if (++explored > kBruteForceBudget)
                    throw capacity_error("brute_force_controllable: exploration budget exceeded");
                Eigen::MatrixXd columns(n, advanced.cols() + block.cols());
                columns.leftCols(advanced.cols()) = advanced;
                columns.rightCols(block.cols()) = block;
                if (consider(columns, next)) return true;
            }
        }
        frontier = std::move(next);
    }
    return false;
}

} // namespace sparsectrl
