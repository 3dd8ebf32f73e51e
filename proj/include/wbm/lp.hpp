#pragma once

#include <optional>

#include <Eigen/Dense>

namespace wbm {

/// Finds x >= 0 with A x = b (phase-one simplex, Bland's rule), or nullopt when infeasible.
/// Intended for the small dense systems used by containment and decomposition queries.
std::optional<Eigen::VectorXd> lp_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                           double tol = 1e-11);

/// True if x lies in the convex hull of the given points (columns of `pts`).
bool in_convex_hull(const Eigen::MatrixXd& pts, const Eigen::VectorXd& x, double tol = 1e-10);

}  // namespace wbm
