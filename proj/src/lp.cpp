#include "wbm/lp.hpp"

#include <limits>
#include <vector>

namespace wbm {

std::optional<Eigen::VectorXd> lp_feasible(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in, double tol) {
  const Eigen::Index m = A_in.rows(), n = A_in.cols();
  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b[i] < 0) {
      A.row(i) *= -1.0;
      b[i] *= -1.0;
    }
  }
  // tableau: [A | I | b], objective = sum of artificials
  const Eigen::Index cols = n + m;
  Eigen::MatrixXd T(m + 1, cols + 1);
  T.setZero();
  T.block(0, 0, m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.block(0, cols, m, 1) = b;
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;
  // reduced costs of the phase-one objective
  for (Eigen::Index j = 0; j <= cols; ++j) T(m, j) = (j >= n && j < cols) ? 0.0 : -T.col(j).head(m).sum();

  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  for (int iter = 0; iter < 50 * static_cast<int>(cols + m); ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (T(m, j) < -tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) > tol) {
        const double ratio = T(i, cols) / T(i, enter);
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave >= 0 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one
    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[leave] = enter;
  }
  if (-T(m, cols) > tol * scale * 10) return std::nullopt;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = std::max(0.0, T(i, cols));
  }
  return x;
}

bool in_convex_hull(const Eigen::MatrixXd& pts, const Eigen::VectorXd& x, double tol) {
  const Eigen::Index d = pts.rows(), k = pts.cols();
  Eigen::MatrixXd A(d + 1, k);
  A.topRows(d) = pts;
  A.row(d).setOnes();
  Eigen::VectorXd b(d + 1);
  b.head(d) = x;
  b[d] = 1.0;
  auto sol = lp_feasible(A, b, tol * 1e-2);
  if (!sol) return false;
  return (A * *sol - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace wbm
