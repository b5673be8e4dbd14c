#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "sparsectrl/sparsity.hpp"

namespace sparsectrl {

/// Steer x0 to xf in `horizon` steps under x_k = Phi x_{k-1} + u_k with every
/// u_k admissible for the family. horizon = 0 selects the default n.
struct SteeringProblem {
    Eigen::MatrixXd phi;
    Eigen::VectorXd x0;
    Eigen::VectorXd xf;
    SupportFamily family;
    int horizon = 0;
    double residual_tol = 1e-8;

    int resolved_horizon() const {
        return horizon > 0 ? horizon : static_cast<int>(phi.rows());
    }
};

struct ControlPlan {
    std::vector<Eigen::VectorXd> inputs;  // u_1 .. u_K
    std::vector<Support> supports;        // certifying S_k, one per step
    double residual_norm = 0.0;           // ||xf - x_K|| from forward simulation
};

struct DesignResult {
    ControlPlan plan;
    bool feasible = false;
    std::vector<double> residual_history; // least-squares residual per iteration
    // Cross-check run when the pursuit misses the tolerance: distinguishes an
    // uncontrollable instance from a heuristic failure.
    std::optional<bool> instance_controllable;
};

/// [Phi^{K-1}, Phi^{K-2}, ..., Phi, I].
Eigen::MatrixXd build_reachability_matrix(const Eigen::MatrixXd& phi, int horizon);

/// Pattern-constrained orthogonal greedy pursuit on
/// xf - Phi^K x0 = [Phi^{K-1}, ..., I] u~. At each iteration the admissible
/// column with the largest absolute correlation against the residual is added
/// (a column is admissible while its step's support stays extendable to a
/// family member) and all selected coefficients are re-fit by least squares.
DesignResult design_inputs(const SteeringProblem& problem);

/// Trajectory x_0 .. x_K of the recursion.
std::vector<Eigen::VectorXd> simulate(const Eigen::MatrixXd& phi, const Eigen::VectorXd& x0,
                                      const std::vector<Eigen::VectorXd>& inputs);

} // namespace sparsectrl
