#include "rigidity/remez.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rigidity/linprog.hpp"

namespace rigidity {

std::vector<std::array<int, kMaxDim>> monomial_basis(int n, int d) {
  std::vector<std::array<int, kMaxDim>> out;
  std::array<int, kMaxDim> expo{};
  for (int deg = 0; deg <= d; ++deg) {
    auto recurse = [&](auto&& self, int axis, int remaining) -> void {
      if (axis == n - 1) {
        expo[static_cast<size_t>(axis)] = remaining;
        out.push_back(expo);
        return;
      }
      for (int e = remaining; e >= 0; --e) {
        expo[static_cast<size_t>(axis)] = e;
        self(self, axis + 1, remaining - e);
      }
      expo[static_cast<size_t>(axis)] = 0;
    };
    recurse(recurse, 0, deg);
  }
  return out;
}

double eval_polynomial(const std::vector<std::array<int, kMaxDim>>& basis,
                       const std::vector<double>& coeff, const Vec& x) {
  double sum = 0;
  for (size_t j = 0; j < basis.size(); ++j) {
    double term = coeff[j];
    for (int i = 0; i < x.n; ++i)
      for (int e = 0; e < basis[j][static_cast<size_t>(i)]; ++e) term *= x[i];
    sum += term;
  }
  return sum;
}

RemezEstimate remez_bounds(const PointSet& z, int d, int grid_resolution, RemezDomain domain) {
  if (z.is_implicit()) throw std::invalid_argument("finite explicit set required");
  if (z.empty()) throw std::invalid_argument("empty set");
  const int n = z.dim();
  const std::vector<Vec>& pts = z.points();

  RemezEstimate est;
  est.d = d;
  est.domain = domain;
  est.grid_resolution = grid_resolution;
  est.basis = monomial_basis(n, d);
  const size_t k = est.basis.size();
  if (k > 200) throw std::invalid_argument("monomial count too large");

  // Degeneracy: a polynomial in the kernel of the evaluation matrix vanishes
  // on all of Z, so no finite norming constant exists.
  Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(k));
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> unit(k, 0.0);
    for (size_t j = 0; j < k; ++j) {
      unit[j] = 1.0;
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          eval_polynomial(est.basis, unit, pts[i]);
      unit[j] = 0.0;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  if (lu.rank() < static_cast<Eigen::Index>(k)) {
    est.infinite = true;
    est.lower = est.upper = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd kernel = lu.kernel();
    est.witness.assign(k, 0.0);
    for (size_t j = 0; j < k; ++j) est.witness[j] = kernel(static_cast<Eigen::Index>(j), 0);
    return est;
  }

  // LP data: |P(z_i)| <= 1 as two rows per point.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (const Vec& p : pts) {
    std::vector<double> row(k);
    for (size_t j = 0; j < k; ++j) {
      std::vector<double> unit(k, 0.0);
      unit[j] = 1.0;
      row[j] = eval_polynomial(est.basis, unit, p);
    }
    std::vector<double> neg(row);
    for (double& v : neg) v = -v;
    a.push_back(std::move(row));
    b.push_back(1.0);
    a.push_back(std::move(neg));
    b.push_back(1.0);
  }

  est.lower = 1.0;
  est.witness.assign(k, 0.0);
  est.witness[0] = 1.0;  // the constant polynomial always attains 1
  const int res = std::max(grid_resolution, 2);
  std::array<int, kMaxDim> idx{};
  while (true) {
    Vec x(n);
    bool inside = true;
    for (int i = 0; i < n; ++i) x[i] = -1.0 + 2.0 * idx[static_cast<size_t>(i)] / (res - 1);
    if (domain == RemezDomain::ball && x.dot(x) > 1.0 + 1e-12) inside = false;
    if (inside) {
      std::vector<double> obj(k);
      for (size_t j = 0; j < k; ++j) {
        std::vector<double> unit(k, 0.0);
        unit[j] = 1.0;
        obj[j] = eval_polynomial(est.basis, unit, x);
      }
      for (double sign : {1.0, -1.0}) {
        std::vector<double> c(obj);
        for (double& v : c) v *= sign;
        LpResult lp = solve_lp_max(a, b, c);
        if (lp.status == LpResult::Status::unbounded) {
          est.infinite = true;
          est.lower = est.upper = std::numeric_limits<double>::infinity();
          return est;
        }
        if (lp.status == LpResult::Status::optimal && lp.value > est.lower) {
          est.lower = lp.value;
          est.witness = lp.x;
        }
      }
    }
    int axis = n - 1;
    while (axis >= 0) {
      if (++idx[static_cast<size_t>(axis)] < res) break;
      idx[static_cast<size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }

  // Markov-type refinement pad: the sup between grid nodes exceeds the grid
  // max by at most (delta/2) * n * d^2 times the sup itself.
  double delta = 2.0 / (res - 1);
  double denom = 1.0 - 0.5 * delta * n * static_cast<double>(d) * static_cast<double>(d);
  if (denom <= 0) {
    est.upper = std::numeric_limits<double>::infinity();
  } else {
    est.upper = est.lower / denom;
  }
  return est;
}

RemezRigidity rigidity_from_remez(const RemezEstimate& est, int d, double rho_min) {
  RemezRigidity out;
  double fact = 1;
  for (int i = 2; i <= d + 1; ++i) fact *= i;
  if (est.infinite || !(est.upper > 0) || std::isinf(est.upper)) {
    out.lower = 0;
  } else {
    out.lower = fact / 2.0 / est.upper;
  }
  if (rho_min > 0)
    out.upper_note = "<= C(n,d) / rho^(d+1) * Rhat with C(n,d) left symbolic, rho = " +
                     std::to_string(rho_min);
  return out;
}

double density_remez_bound(const PointSet& z, int d, double rho) {
  const int n = z.dim();
  double card = z.count();
  double gate = std::pow(4.0 * d, n) * std::pow(1.0 / rho, n - 1);
  if (!(card > gate)) throw std::runtime_error("below density threshold");
  double fact = 1;
  for (int i = 2; i <= d + 1; ++i) fact *= i;
  double inner = (card * std::pow(rho, n) - std::pow(4.0 * d, n) * rho) / (4.0 * n);
  return fact / 2.0 * std::pow(inner, d);
}

double h_dense_density_bound(int n, int d, double s) {
  double fact = 1;
  for (int i = 2; i <= d + 1; ++i) fact *= i;
  return fact / 2.0 * std::pow(s / (12.0 * n), n * d);
}

}  // namespace rigidity
