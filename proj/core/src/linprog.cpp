#include "rigidity/linprog.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rigidity {

namespace {

// Revised simplex for min g.y s.t. M y = r, y >= 0, with k rows and k small.
// Columns >= m_real are artificials (cost handled by the caller via g).
// Bland's rule throughout, so it terminates; basis refactored every pivot,
// which is cheap because k is the number of polynomial coefficients.
struct DualSimplex {
  int k = 0;
  Eigen::MatrixXd m;  // k x cols
  Eigen::VectorXd g;  // cols
  Eigen::VectorXd r;  // k
  std::vector<int> basis;

  // Returns false on unbounded descent (not expected for our duals).
  bool run(int forbid_from) {
    const int cols = static_cast<int>(m.cols());
    const double tol = 1e-9;
    const int max_iter = 200 * (cols + k) + 2000;
    for (int iter = 0; iter < max_iter; ++iter) {
      Eigen::MatrixXd B(k, k);
      for (int i = 0; i < k; ++i) B.col(i) = m.col(basis[static_cast<size_t>(i)]);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
      Eigen::VectorXd yb = lu.solve(r);
      Eigen::VectorXd gb(k);
      for (int i = 0; i < k; ++i) gb[i] = g[basis[static_cast<size_t>(i)]];
      Eigen::VectorXd lambda = lu.transpose().solve(gb);

      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (j >= forbid_from) break;
        bool basic = false;
        for (int i = 0; i < k; ++i) basic = basic || basis[static_cast<size_t>(i)] == j;
        if (basic) continue;
        if (g[j] - lambda.dot(m.col(j)) < -tol) enter = j;
      }
      if (enter < 0) return true;  // optimal

      Eigen::VectorXd u = lu.solve(m.col(enter));
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < k; ++i) {
        if (u[i] > tol) {
          double ratio = std::max(yb[i], 0.0) / u[i];
          if (ratio < best - tol ||
              (ratio < best + tol &&
               (leave < 0 || basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])))
            best = ratio, leave = i;
        }
      }
      if (leave < 0) return false;  // unbounded
      basis[static_cast<size_t>(leave)] = enter;
    }
    throw std::runtime_error("simplex iteration limit");
  }

  double objective() const {
    Eigen::MatrixXd B(k, k);
    for (int i = 0; i < k; ++i) B.col(i) = m.col(basis[static_cast<size_t>(i)]);
    Eigen::VectorXd yb = B.partialPivLu().solve(r);
    double obj = 0;
    for (int i = 0; i < k; ++i) obj += g[basis[static_cast<size_t>(i)]] * yb[i];
    return obj;
  }
};

}  // namespace

// max c.x s.t. A x <= b with x free and b >= 0, solved through the dual
// min b.y, A^T y = c, y >= 0, whose basis has only |c| rows.
LpResult solve_lp_max(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                      const std::vector<double>& c) {
  const int mrows = static_cast<int>(a.size());
  const int k = static_cast<int>(c.size());
  for (double bv : b)
    if (bv < 0) throw std::invalid_argument("right-hand side must be nonnegative");

  LpResult res;
  DualSimplex s;
  s.k = k;
  s.m.resize(k, mrows + k);
  s.r.resize(k);
  for (int i = 0; i < k; ++i) {
    double sign = c[static_cast<size_t>(i)] >= 0 ? 1.0 : -1.0;
    s.r[i] = sign * c[static_cast<size_t>(i)];
    for (int j = 0; j < mrows; ++j)
      s.m(i, j) = sign * a[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  // Artificial columns form an identity; they are the initial feasible basis.
  for (int i = 0; i < k; ++i) {
    s.m.col(mrows + i).setZero();
    s.m(i, mrows + i) = 1.0;
    s.basis.push_back(mrows + i);
  }

  // Phase 1: drive the artificials to zero.
  s.g = Eigen::VectorXd::Zero(mrows + k);
  for (int i = 0; i < k; ++i) s.g[mrows + i] = 1.0;
  if (!s.run(mrows + k)) throw std::runtime_error("phase-1 descent unbounded");
  if (s.objective() > 1e-7) {
    res.status = LpResult::Status::unbounded;  // dual infeasible => primal unbounded
    return res;
  }

  // Phase 2: the true dual objective; artificials may not re-enter.
  s.g = Eigen::VectorXd::Zero(mrows + k);
  for (int j = 0; j < mrows; ++j) s.g[j] = b[static_cast<size_t>(j)];
  if (!s.run(mrows)) {
    res.status = LpResult::Status::unbounded;
    return res;
  }

  res.status = LpResult::Status::optimal;
  res.value = s.objective();
  // Complementary slackness: basic dual columns mark tight primal rows.
  Eigen::MatrixXd bt(k, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < k; ++i) {
    int col = s.basis[static_cast<size_t>(i)];
    if (col < mrows) {
      for (int q = 0; q < k; ++q) bt(i, q) = a[static_cast<size_t>(col)][static_cast<size_t>(q)];
      rhs[i] = b[static_cast<size_t>(col)];
    } else {
      // Residual artificial at level zero: pad with a harmless normal row.
      for (int q = 0; q < k; ++q) bt(i, q) = i == q ? 1.0 : 0.0;
      rhs[i] = 0.0;
    }
  }
  Eigen::VectorXd x = bt.fullPivLu().solve(rhs);
  res.x.assign(static_cast<size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) res.x[static_cast<size_t>(i)] = x[i];
  return res;
}

}  // namespace rigidity
