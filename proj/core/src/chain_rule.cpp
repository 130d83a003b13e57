#include "rigidity/chain_rule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rigidity/line_geometry.hpp"

namespace rigidity {

namespace {

std::vector<ExpansionTerm> normalize(std::vector<ExpansionTerm> terms) {
  std::map<std::vector<std::array<int, 2>>, long long> merged;
  for (ExpansionTerm& t : terms) {
    std::sort(t.factors.begin(), t.factors.end());
    merged[t.factors] += t.coeff;
  }
  std::vector<ExpansionTerm> out;
  for (auto& [factors, coeff] : merged) {
    if (coeff == 0) continue;
    ExpansionTerm t;
    t.factors = factors;
    t.coeff = coeff;
    out.push_back(std::move(t));
  }
  return out;
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::array<int, kMaxDim> ExpansionTerm::f_multi_index() const {
  std::array<int, kMaxDim> alpha{};
  for (const auto& f : factors) ++alpha[static_cast<size_t>(f[1])];
  return alpha;
}

int ExpansionTerm::weighted_degree() const {
  int s = 0;
  for (const auto& f : factors) s += f[0];
  return s;
}

std::vector<const ExpansionTerm*> CompositionExpansion::group(int f_order) const {
  std::vector<const ExpansionTerm*> out;
  for (const ExpansionTerm& t : terms)
    if (t.f_order() == f_order) out.push_back(&t);
  return out;
}

CompositionExpansion expand(int n, int m) {
  if (n < 1 || n > kMaxDim || m < 1 || m > 6) throw std::invalid_argument("order out of range");
  std::vector<ExpansionTerm> terms;
  for (int i = 0; i < n; ++i) {
    ExpansionTerm t;
    t.factors = {{1, i}};
    t.coeff = 1;
    terms.push_back(std::move(t));
  }
  for (int order = 2; order <= m; ++order) {
    std::vector<ExpansionTerm> next;
    for (const ExpansionTerm& t : terms) {
      // Differentiating the f-partial pulls in one more first-order factor.
      for (int i = 0; i < n; ++i) {
        ExpansionTerm u = t;
        u.factors.push_back({1, i});
        next.push_back(std::move(u));
      }
      // Differentiating each curve factor raises its order by one.
      for (size_t j = 0; j < t.factors.size(); ++j) {
        ExpansionTerm u = t;
        ++u.factors[j][0];
        next.push_back(std::move(u));
      }
    }
    terms = normalize(std::move(next));
  }
  CompositionExpansion e;
  e.n = n;
  e.m = m;
  e.terms = normalize(std::move(terms));
  return e;
}

ChainRuleConstants compute_constants(int n, int d, const BumpFunction& bump,
                                     const ConstantsConfig& config) {
  if (d < 1 || d + 1 > 6) throw std::invalid_argument("order out of range");
  if (bump.max_order() < d + 1) throw std::invalid_argument("bump table too short");
  ChainRuleConstants c;
  c.n = n;
  c.d = d;

  // Structural constants from the one-variable shape of the expansion.
  CompositionExpansion shape = expand(1, d + 1);
  c.B1 = static_cast<double>(shape.terms.size());
  long long max_coeff = 0;
  for (const ExpansionTerm& t : shape.terms) max_coeff = std::max(max_coeff, std::llabs(t.coeff));
  c.B2 = static_cast<double>(max_coeff);
  // Coordinate-assignment multiplicity of the non-leading monomials.
  double b3 = 1;
  for (const ExpansionTerm& t : shape.terms)
    if (t.f_order() <= d) b3 = std::max(b3, std::pow(static_cast<double>(n), t.f_order()));
  c.B3 = b3;
  // Sum of the coefficients of the pure-first-derivative (leading) group.
  CompositionExpansion full = expand(n, d + 1);
  double b4 = 0;
  for (const ExpansionTerm& t : full.terms)
    if (t.f_order() == d + 1) b4 += static_cast<double>(t.coeff);
  c.B4 = b4;

  c.B5 = config.b5 > 0 ? config.b5 : std::pow(2.0 * (d + 1) * (d + 1), d + 1);
  c.B6 = config.b6;

  c.C2 = d * c.B1 * c.B2 * c.B3;
  c.C1 = 1.0 / c.B4;
  c.B7 = c.C1 * c.C2 * c.B5;
  c.B8 = c.C1 * c.C2 * c.B6;
  c.C3 = std::min({1.0 / (2.0 * c.B7), 1.0 / (2.0 * c.B8), c.C1 / (10.0 * c.B7)});
  c.C4 = 0.5 * c.C1 * (factorial(d + 1) / std::pow(2.0, d + 1) - 0.1);

  c.theta_n = std::pow(2.0, 3 * (n - 1)) * beta_bar_closed_form(n) / beta_full(n);
  c.xi1 = 2.0 * c.theta_n * n * n * (d + 1);
  double worst_length = 23.0 / 15.0;  // longest possible reparametrized interval
  double dbar = 0;
  for (int k = 2; k <= d + 1; ++k)
    dbar = std::max(dbar, std::pow(worst_length, k) * bump.norm(k));
  c.Dbar = dbar;
  c.xi2 = std::sqrt(static_cast<double>(n)) * c.Dbar;
  c.xi3 = std::pow(c.xi2, 1.0 / (d + 1)) * c.xi1;
  c.xi = c.C3 / (2.0 * std::pow(c.xi3, d + 1));

  c.provenance = {
      {"B1", "monomial count of the one-variable expansion shape at order d+1"},
      {"B2", "largest coefficient of the one-variable expansion shape"},
      {"B3", "n^k coordinate assignments over non-leading monomials, k <= d"},
      {"B4", "coefficient sum of the leading pure-first-derivative group"},
      {"B5", "intermediate-derivative bound, constant part (configurable)"},
      {"B6", "intermediate-derivative bound, top-order part (configurable)"},
      {"B7", "C1 * C2 * B5"},
      {"B8", "C1 * C2 * B6"},
      {"C1", "1 / B4"},
      {"C2", "d * B1 * B2 * B3"},
      {"C3", "min(1/(2 B7), 1/(2 B8), C1/(10 B7))"},
      {"C4", "C1/2 * ((d+1)!/2^(d+1) - 1/10)"},
      {"theta_n", "2^(3(n-1)) * cap measure ratio for the radius-1/3 ball"},
      {"xi1", "2 * theta_n * n^2 * (d+1)"},
      {"xi2", "sqrt(n) * Dbar"},
      {"xi3", "xi2^(1/(d+1)) * xi1"},
      {"xi", "C3 / (2 xi3^(d+1))"},
      {"Dbar", "max over k=2..d+1 of (23/15)^k * M_k(phi)"},
  };
  return c;
}

double compose_derivative(const TestField& f, const CurveFn& curve, double eta, int m) {
  if (m < 1 || m > 6) throw std::invalid_argument("order out of range");
  const Vec x = curve(eta, 0);
  const int n = x.n;
  CompositionExpansion e = expand(n, m);
  std::vector<Vec> deriv(static_cast<size_t>(m) + 1, Vec(n));
  for (int k = 1; k <= m; ++k) deriv[static_cast<size_t>(k)] = curve(eta, k);
  double sum = 0;
  for (const ExpansionTerm& t : e.terms) {
    double term = static_cast<double>(t.coeff) * f.partial(x, t.f_multi_index());
    for (const auto& fac : t.factors) term *= deriv[static_cast<size_t>(fac[0])][fac[1]];
    sum += term;
  }
  return sum;
}

double compose_derivative(const TestField& f, const CurveSpec& spec, double eta, int m) {
  return compose_derivative(
      f, [&spec](double e, int k) { return curve_eval(spec, e, k); }, eta, m);
}

CompositionReport check_composition_inequality(const TestField& f, const CurveSpec& spec,
                                               const ChainRuleConstants& constants, double eta) {
  const int d = constants.d;
  if (spec.d < d) throw std::invalid_argument("curve order too low");
  if (spec.norm_bound[1] > 1.0 || nu_d_of_curve(spec, d) > 1.0)
    throw std::invalid_argument("curve norms out of regime");

  CompositionReport r;
  Vec x = curve_eval(spec, eta, 0);
  r.lhs = f.max_partial_norm(x, d + 1);
  r.g_dp1 = std::abs(compose_derivative(f, spec, eta, d + 1));
  for (int k = 1; k <= d; ++k) r.mu_d_f = std::max(r.mu_d_f, f.max_partial_norm(x, k));
  for (int k = 2; k <= d + 1; ++k)
    r.nu_d_omega = std::max(r.nu_d_omega, curve_eval(spec, eta, k).norm_inf());
  r.speed = curve_eval(spec, eta, 1).norm_inf();
  r.rhs = constants.C1 / std::pow(r.speed, d + 1) *
          (r.g_dp1 - constants.C2 * r.mu_d_f * r.nu_d_omega);
  r.slack = r.lhs - r.rhs;
  return r;
}

AggregateReport aggregate_composition_report(const TestField& f, const CurveSpec& spec,
                                             const ChainRuleConstants& constants, int eta_grid,
                                             int ball_samples) {
  const int d = constants.d;
  AggregateReport a;
  a.m_dp1_f = empirical_derivative_max(f, d + 1, ball_samples, 12345);
  for (int k = 1; k <= d; ++k)
    a.mu_d_f = std::max(a.mu_d_f, empirical_derivative_max(f, k, ball_samples, 12345));
  for (int i = 0; i <= eta_grid; ++i) {
    double eta = -1.0 + 2.0 * i / eta_grid;
    a.m_dp1_g = std::max(a.m_dp1_g, std::abs(compose_derivative(f, spec, eta, d + 1)));
  }
  a.nu_d_omega = nu_d_of_curve(spec, d);
  a.corollary_rhs =
      constants.C1 * (a.m_dp1_g - constants.C2 * a.mu_d_f * a.nu_d_omega);
  a.small_nu_applicable = a.nu_d_omega <= constants.C3;
  a.small_nu_rhs = 0.5 * constants.C1 * (a.m_dp1_g - 0.1);
  return a;
}

std::vector<double> intermediate_derivative_bound(int d, double m0, double md1,
                                                  const ChainRuleConstants& constants) {
  if (m0 < 0 || md1 < 0) throw std::invalid_argument("norms must be nonnegative");
  return std::vector<double>(static_cast<size_t>(d),
                             constants.B5 * m0 + constants.B6 * md1);
}

}  // namespace rigidity
