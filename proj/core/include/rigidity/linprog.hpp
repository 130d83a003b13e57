#pragma once

#include <vector>

namespace rigidity {

struct LpResult {
  enum class Status { optimal, unbounded, iteration_limit };
  Status status = Status::optimal;
  double value = 0;
  std::vector<double> x;
};

/// Maximizes c.x subject to A x <= b with free variables, by primal simplex
/// (Bland's rule) on the split-variable standard form. Requires b >= 0, which
/// makes the slack basis feasible; all call sites satisfy this.
LpResult solve_lp_max(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                      const std::vector<double>& c);

}  // namespace rigidity
