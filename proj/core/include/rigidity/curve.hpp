#pragma once

#include <vector>

#include "rigidity/bump.hpp"
#include "rigidity/line_geometry.hpp"
#include "rigidity/vec.hpp"

namespace rigidity {

/// Analytic curve through z0 and d+1 near-line points: a straight segment
/// deformed by translated bump functions with pairwise disjoint supports,
/// affinely reparametrized onto [-1, 1].
struct CurveSpec {
  Vec z0;
  Vec v;  // unit direction of the underlying line

  struct Anchor {
    double tau = 0;  // projection parameter of the interpolated point
    Vec offset;      // component orthogonal to v; |offset| <= rho
    Vec point;       // the interpolated point itself
  };
  std::vector<Anchor> anchors;

  int d = 0;
  double kappa = 0;  // min projection gap of the generating certificate
  double rho = 0;    // max |offset|
  double t_lo = 0;   // reparametrization maps [-1,1] affinely onto [t_lo, t_hi]
  double t_hi = 0;
  double length() const { return t_hi - t_lo; }

  BumpFunction bump;

  std::vector<double> norm_bound;  // certified M_k(omega), k = 0..d+1
  std::vector<double> d_factor;    // D_k = L^k * M_k(phi), k = 0..d+1
  double nu_d = 0;                 // max_{k=2..d+1} M_k(omega)

  /// Curve parameter eta in [-1,1] whose image interpolates anchors[i].
  double anchor_parameter(int i) const;
};

/// Builds the interpolating curve for an admissible certificate
/// (1/10 > kappa >= 10 rho). Throws "kappa/rho regime violated" otherwise.
CurveSpec build_curve(const LineCertificate& cert, const BumpFunction& bump);

/// k-th derivative of the curve with respect to eta, 0 <= k <= d+1.
Vec curve_eval(const CurveSpec& spec, double eta, int k);

/// Certified upper bound on max_{eta, k=2..d+1} of the max-coordinate norm of
/// the k-th derivative (the curve's d-thickness contribution).
double nu_d_of_curve(const CurveSpec& spec, int d);

}  // namespace rigidity
