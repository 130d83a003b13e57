#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rigidity/bump.hpp"
#include "rigidity/curve.hpp"
#include "rigidity/test_fields.hpp"
#include "rigidity/vec.hpp"

namespace rigidity {

/// One monomial of the expansion of d^m (f o omega) / dt^m: an integer
/// coefficient times a partial of f contracted with curve-derivative factors.
struct ExpansionTerm {
  // Each factor is (derivative order of omega, coordinate index); sorted.
  std::vector<std::array<int, 2>> factors;
  long long coeff = 0;

  /// Total derivative order of f hit by this term (= number of factors).
  int f_order() const { return static_cast<int>(factors.size()); }
  /// Multi-index of the f-partial (counts of coordinates among factors).
  std::array<int, kMaxDim> f_multi_index() const;
  /// Weighted degree: sum of the omega-derivative orders.
  int weighted_degree() const;
};

/// Full expansion of the m-th derivative of a composition in n variables,
/// generated by iterated symbolic differentiation.
struct CompositionExpansion {
  int n = 0;
  int m = 0;
  std::vector<ExpansionTerm> terms;

  std::vector<const ExpansionTerm*> group(int f_order) const;
};

/// Faa di Bruno expansion, exact integer coefficients. 1 <= m <= 6, n <= 4.
CompositionExpansion expand(int n, int m);

struct ChainRuleConstants {
  int n = 0, d = 0;
  double B1 = 0, B2 = 0, B3 = 0, B4 = 0, B5 = 0, B6 = 0, B7 = 0, B8 = 0;
  double C1 = 0, C2 = 0, C3 = 0, C4 = 0;
  double theta_n = 0, xi1 = 0, xi2 = 0, xi3 = 0, xi = 0, Dbar = 0;
  std::vector<std::pair<std::string, std::string>> provenance;
};

struct ConstantsConfig {
  // Intermediate-derivative inequality M_k <= B5*M0 + B6*M_{d+1}; the
  // coefficients are configurable, with generous interval-type defaults.
  double b5 = 0;  // 0 = use default (2 (d+1)^2)^(d+1)
  double b6 = 2.0;
};

/// Derives every constant from the expansion, the bump's certified norm
/// table, and the closed-form direction-cap measures.
ChainRuleConstants compute_constants(int n, int d, const BumpFunction& bump,
                                     const ConstantsConfig& config = {});

/// Generic parametric curve: (eta, k) -> k-th derivative vector.
using CurveFn = std::function<Vec(double, int)>;

/// g^{(m)}(eta) for g = f o omega, via the expansion contracted against exact
/// partials of f and closed-form curve derivatives.
double compose_derivative(const TestField& f, const CurveFn& curve, double eta, int m);
double compose_derivative(const TestField& f, const CurveSpec& spec, double eta, int m);

struct CompositionReport {
  double lhs = 0;        // ||d^{d+1} f(omega(eta))||
  double rhs = 0;        // C1/||omega'||^{d+1} (|g^{(d+1)}| - C2 mu_d nu_d)
  double slack = 0;      // lhs - rhs
  double g_dp1 = 0;      // |g^{(d+1)}(eta)|
  double mu_d_f = 0;     // max_{k<=d} ||d^k f(omega(eta))||
  double nu_d_omega = 0; // max_{k=2..d+1} ||omega^{(k)}(eta)||
  double speed = 0;      // ||omega'(eta)|| (max-coordinate norm)
};

/// Pointwise composition inequality at eta. Requires ||omega'|| <= 1 and
/// nu_d(omega) <= 1.
CompositionReport check_composition_inequality(const TestField& f, const CurveSpec& spec,
                                               const ChainRuleConstants& constants, double eta);

struct AggregateReport {
  double m_dp1_f = 0;   // grid estimate of M_{d+1}(f)
  double m_dp1_g = 0;   // grid estimate of M_{d+1}(g)
  double mu_d_f = 0;    // grid estimate of mu_d(f)
  double nu_d_omega = 0;
  double corollary_rhs = 0;   // C1 (M_{d+1}(g) - C2 mu_d(f) nu_d(omega))
  double small_nu_rhs = 0;    // C1/2 (M_{d+1}(g) - 1/10), valid when nu_d <= C3
  bool small_nu_applicable = false;
};

/// Aggregate (interval-wide) forms of the composition inequality, estimated
/// over coarse ball/parameter grids.
AggregateReport aggregate_composition_report(const TestField& f, const CurveSpec& spec,
                                             const ChainRuleConstants& constants,
                                             int eta_grid = 200, int ball_samples = 2000);

/// Intermediate-derivative bound B5*M0 + B6*M_{d+1} for k = 1..d.
std::vector<double> intermediate_derivative_bound(int d, double m0, double md1,
                                                  const ChainRuleConstants& constants);

}  // namespace rigidity
