#include "sparsectrl/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sparsectrl/control.hpp"
#include "sparsectrl/errors.hpp"

namespace sparsectrl {

Eigen::MatrixXd build_reachability_matrix(const Eigen::MatrixXd& phi, int horizon) {
    if (horizon < 1) throw std::invalid_argument("build_reachability_matrix: horizon >= 1");
    if (phi.rows() != phi.cols()) throw std::invalid_argument("build_reachability_matrix: square phi");
    const int n = static_cast<int>(phi.rows());
    Eigen::MatrixXd out(n, static_cast<Eigen::Index>(horizon) * n);
    // Block k (0-based) carries Phi^{K-1-k}; fill right to left, reusing the
    // previous power.
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    for (int k = horizon - 1; k >= 0; --k) {
        out.middleCols(static_cast<Eigen::Index>(k) * n, n) = power;
        if (k > 0) power = phi * power;
    }
    return out;
}

std::vector<Eigen::VectorXd> simulate(const Eigen::MatrixXd& phi, const Eigen::VectorXd& x0,
                                      const std::vector<Eigen::VectorXd>& inputs) {
    if (phi.rows() != phi.cols() || phi.rows() != x0.size())
        throw std::invalid_argument("simulate: dimension mismatch");
    std::vector<Eigen::VectorXd> trajectory;
    trajectory.reserve(inputs.size() + 1);
    trajectory.push_back(x0);
    for (const Eigen::VectorXd& u : inputs) {
        if (u.size() != x0.size()) throw std::invalid_argument("simulate: input dimension mismatch");
        trajectory.push_back(phi * trajectory.back() + u);
    }
    return trajectory;
}

namespace {

// Complete a partial step support to a certifying family member.
Support complete_support(const SupportFamily& family, const Support& partial) {
    switch (family.kind()) {
        case FamilyKind::Unconstrained: {
            Support out = partial;
            for (int i = 0; i < family.n() && static_cast<int>(out.size()) < family.s(); ++i)
                if (!std::binary_search(partial.begin(), partial.end(), i)) out.push_back(i);
            std::sort(out.begin(), out.end());
            return out;
        }
        case FamilyKind::Piecewise: {
            const int window = family.n() / family.m();
            const int per_window = family.s() / family.m();
            std::vector<int> counts(static_cast<std::size_t>(family.m()), 0);
            for (int idx : partial) ++counts[static_cast<std::size_t>(idx / window)];
            Support out = partial;
            for (int w = 0; w < family.m(); ++w) {
                for (int pos = 0;
                     pos < window && counts[static_cast<std::size_t>(w)] < per_window; ++pos) {
                    const int idx = w * window + pos;
                    if (!std::binary_search(partial.begin(), partial.end(), idx)) {
                        out.push_back(idx);
                        ++counts[static_cast<std::size_t>(w)];
                    }
                }
            }
            std::sort(out.begin(), out.end());
            return out;
        }
        case FamilyKind::Block: {
            const int blocks = family.n() / family.m();
            const int want = family.s() / family.m();
            std::vector<bool> touched(static_cast<std::size_t>(blocks), false);
            int have = 0;
            for (int idx : partial) {
                const std::size_t b = static_cast<std::size_t>(idx / family.m());
                if (!touched[b]) {
                    touched[b] = true;
                    ++have;
                }
            }
            for (int b = 0; b < blocks && have < want; ++b) {
                if (!touched[static_cast<std::size_t>(b)]) {
                    touched[static_cast<std::size_t>(b)] = true;
                    ++have;
                }
            }
            Support out;
            for (int b = 0; b < blocks; ++b)
                if (touched[static_cast<std::size_t>(b)])
                    for (int j = 0; j < family.m(); ++j) out.push_back(b * family.m() + j);
            return out;
        }
        case FamilyKind::Explicit:
            for (const Support& member : family.explicit_sets())
                if (std::includes(member.begin(), member.end(), partial.begin(), partial.end()))
                    return member;
            throw std::logic_error("complete_support: partial support is not extendable");
    }
    throw std::logic_error("complete_support: unknown family kind");
}

Support insert_sorted(Support set, int value) {
    set.insert(std::upper_bound(set.begin(), set.end(), value), value);
    return set;
}

} // namespace

DesignResult design_inputs(const SteeringProblem& problem) {
    const int n = static_cast<int>(problem.phi.rows());
    if (problem.phi.cols() != n || problem.x0.size() != n || problem.xf.size() != n)
        throw std::invalid_argument("design_inputs: dimension mismatch");
    if (problem.family.n() != n)
        throw std::invalid_argument("design_inputs: family ambient dimension mismatch");
    const int horizon = problem.resolved_horizon();

    const Eigen::MatrixXd dictionary = build_reachability_matrix(problem.phi, horizon);
    Eigen::MatrixXd phi_pow = Eigen::MatrixXd::Identity(n, n);
    for (int k = 0; k < horizon; ++k) phi_pow = problem.phi * phi_pow;
    const Eigen::VectorXd target = problem.xf - phi_pow * problem.x0;

    std::vector<double> column_norms(static_cast<std::size_t>(dictionary.cols()));
    for (Eigen::Index c = 0; c < dictionary.cols(); ++c)
        column_norms[static_cast<std::size_t>(c)] = dictionary.col(c).norm();

    std::vector<Support> step_supports(static_cast<std::size_t>(horizon));
    std::vector<Eigen::Index> selected;
    std::vector<bool> picked(static_cast<std::size_t>(dictionary.cols()), false);
    Eigen::VectorXd coefficients;
    Eigen::VectorXd residual = target;

    DesignResult result;
    result.residual_history.push_back(residual.norm());

    const int max_iterations = horizon * n;

    // Orthonormal basis of the selected columns, grown with each pick. Used
    // both for the refit residual and for the span-completion fallback.
    Eigen::MatrixXd span(n, 0);
    auto orthogonal_part = [&](const Eigen::VectorXd& column) -> Eigen::VectorXd {
        if (span.cols() == 0) return column;
        return column - span * (span.transpose() * column);
    };

    for (int iteration = 0; iteration < max_iterations; ++iteration) {
        if (residual.norm() <= problem.residual_tol) break;

        // Primary rule: largest absolute correlation with the residual.
        // Fallback once every admissible correlation degenerates (the residual
        // is orthogonal to all remaining admissible columns): grow the
        // selected span instead, so later refits can keep closing the gap.
        const double correlation_floor = 1e-12 * residual.norm();
        Eigen::Index best = -1;
        double best_score = correlation_floor;
        Eigen::Index best_completion = -1;
        double best_completion_score = 1e-8;
        for (Eigen::Index c = 0; c < dictionary.cols(); ++c) {
            if (picked[static_cast<std::size_t>(c)]) continue;
            const double norm = column_norms[static_cast<std::size_t>(c)];
            if (norm <= 0.0) continue;
            const int step = static_cast<int>(c) / n;
            const int index = static_cast<int>(c) % n;
            const double score = std::abs(dictionary.col(c).dot(residual)) / norm;
            const double completion_score = orthogonal_part(dictionary.col(c)).norm() / norm;
            if (score <= best_score && completion_score <= best_completion_score) continue;
            if (!is_extendable(problem.family,
                               insert_sorted(step_supports[static_cast<std::size_t>(step)], index)))
                continue;
            if (score > best_score) {
                best = c;
                best_score = score;
            }
            if (completion_score > best_completion_score) {
                best_completion = c;
                best_completion_score = completion_score;
            }
        }
        if (best < 0) best = best_completion;
        if (best < 0) break; // nothing admissible improves the residual or the span

        const int step = static_cast<int>(best) / n;
        const int index = static_cast<int>(best) % n;
        picked[static_cast<std::size_t>(best)] = true;
        selected.push_back(best);
        step_supports[static_cast<std::size_t>(step)] =
            insert_sorted(step_supports[static_cast<std::size_t>(step)], index);

        Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(selected.size()));
        for (std::size_t j = 0; j < selected.size(); ++j)
            basis.col(static_cast<Eigen::Index>(j)) = dictionary.col(selected[j]);
        const Eigen::VectorXd fit = basis.colPivHouseholderQr().solve(target);
        const Eigen::VectorXd new_residual = target - basis * fit;

        if (new_residual.norm() > result.residual_history.back() + 1e-15) {
            // The refit went backwards numerically: retire this column and try
            // the remaining candidates.
            selected.pop_back();
            Support& support = step_supports[static_cast<std::size_t>(step)];
            support.erase(std::find(support.begin(), support.end(), index));
            continue;
        }

        const Eigen::VectorXd fresh = orthogonal_part(dictionary.col(best));
        if (fresh.norm() > 1e-10 * column_norms[static_cast<std::size_t>(best)]) {
            span.conservativeResize(Eigen::NoChange, span.cols() + 1);
            span.col(span.cols() - 1) = fresh / fresh.norm();
        }
        coefficients = fit;
        residual = new_residual;
        result.residual_history.push_back(residual.norm());
    }

    // Assemble the plan.
    ControlPlan plan;
    plan.inputs.assign(static_cast<std::size_t>(horizon), Eigen::VectorXd::Zero(n));
    for (std::size_t j = 0; j < selected.size(); ++j) {
        const int step = static_cast<int>(selected[j]) / n;
        const int index = static_cast<int>(selected[j]) % n;
        plan.inputs[static_cast<std::size_t>(step)](index) = coefficients(static_cast<Eigen::Index>(j));
    }
    plan.supports.reserve(static_cast<std::size_t>(horizon));
    for (int k = 0; k < horizon; ++k)
        plan.supports.push_back(
            complete_support(problem.family, step_supports[static_cast<std::size_t>(k)]));

    const std::vector<Eigen::VectorXd> trajectory = simulate(problem.phi, problem.x0, plan.inputs);
    plan.residual_norm = (problem.xf - trajectory.back()).norm();

    result.feasible = plan.residual_norm <= problem.residual_tol;
    result.plan = std::move(plan);

    if (!result.feasible) {
        try {
            const ControllabilityVerdict verdict =
                is_sparse_controllable(LinearSystem::opinion(problem.phi), problem.family);
            result.instance_controllable = verdict.controllable;
        } catch (const std::exception&) {
            result.instance_controllable = std::nullopt;
        }
    }
    return result;
}

} // namespace sparsectrl
