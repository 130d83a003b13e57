#pragma once

#include <array>
#include <string>
#include <vector>

#include "rigidity/point_set.hpp"
#include "rigidity/vec.hpp"

namespace rigidity {

enum class RemezDomain { cube, ball };

struct RemezEstimate {
  int d = 0;
  bool infinite = false;  // a nonzero degree-d polynomial vanishes on Z
  double lower = 1;       // certified: some polynomial attains this ratio
  double upper = 0;       // lower inflated by the grid-refinement pad
  std::vector<double> witness;                    // coefficients, graded-lex basis
  std::vector<std::array<int, kMaxDim>> basis;    // monomial exponents
  int grid_resolution = 0;
  RemezDomain domain = RemezDomain::ball;
};

/// Graded-lex monomial exponents of total degree <= d in n variables.
std::vector<std::array<int, kMaxDim>> monomial_basis(int n, int d);

/// Evaluates a coefficient vector against the basis at x.
double eval_polynomial(const std::vector<std::array<int, kMaxDim>>& basis,
                       const std::vector<double>& coeff, const Vec& x);

/// Two-sided estimate of the Remez constant of a finite set: LP maximization
/// of |P| over domain grid points subject to |P| <= 1 on Z, with a Markov-type
/// inflation giving a rigorous upper bound.
RemezEstimate remez_bounds(const PointSet& z, int d, int grid_resolution = 200,
                           RemezDomain domain = RemezDomain::ball);

struct RemezRigidity {
  double lower = 0;        // (d+1)!/2 / upper(est); 0 when est is infinite
  std::string upper_note;  // the two-sided form carries an unspecified factor
};

RemezRigidity rigidity_from_remez(const RemezEstimate& est, int d, double rho_min = 0);

/// Cardinality/spacing lower bound on the d-rigidity:
/// (d+1)!/2 * ((|Z| rho^n - (4d)^n rho) / (4n))^d. Errors with
/// "below density threshold" when the cardinality condition fails.
double density_remez_bound(const PointSet& z, int d, double rho);

/// Specialized bound for h-dense sets: (d+1)!/2 * (s/(12 n))^(n d).
double h_dense_density_bound(int n, int d, double s);

}  // namespace rigidity
