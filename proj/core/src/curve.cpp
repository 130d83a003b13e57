#include "rigidity/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace rigidity {

namespace {

// Unreparametrized curve derivative d^k omega / dt^k at line parameter t.
Vec raw_eval(const CurveSpec& spec, double t, int k) {
  const int n = spec.z0.n;
  const double scale = 2.0 / spec.kappa;
  Vec out(n);
  if (k == 0) {
    out = spec.z0 + spec.v * t;
  } else if (k == 1) {
    out = spec.v;
  }
  double factor = std::pow(scale, k);
  for (const CurveSpec::Anchor& a : spec.anchors) {
    double arg = scale * (t - a.tau);
    if (std::abs(arg) >= spec.bump.support_halfwidth()) continue;
    out += a.offset * (factor * spec.bump.eval(arg, k));
  }
  return out;
}

}  // namespace

double CurveSpec::anchor_parameter(int i) const {
  double t = anchors[static_cast<size_t>(i)].tau;
  return -1.0 + 2.0 * (t - t_lo) / length();
}

CurveSpec build_curve(const LineCertificate& cert, const BumpFunction& bump) {
  if (!cert.admissible()) throw std::invalid_argument("kappa/rho regime violated");
  const int n = cert.line.z0.n;
  const int d = cert.d;
  if (bump.max_order() < d + 1) throw std::invalid_argument("bump table too short");

  CurveSpec spec;
  spec.z0 = cert.line.z0;
  spec.v = cert.line.v;
  spec.d = d;
  spec.kappa = cert.kappa;
  spec.bump = bump;

  for (const Vec& p : cert.selected) {
    CurveSpec::Anchor a;
    a.tau = cert.line.projection(p);
    a.point = p;
    Vec w = p - cert.line.z0;
    a.offset = w - spec.v * w.dot(spec.v);
    spec.anchors.push_back(a);
    spec.rho = std::max(spec.rho, a.offset.norm2());
  }

  spec.t_lo = -0.1;
  spec.t_hi = spec.anchors.back().tau + 0.1;
  const double L = spec.length();
  const double half = L / 2.0;

  spec.norm_bound.assign(static_cast<size_t>(d + 2), 0.0);
  spec.d_factor.assign(static_cast<size_t>(d + 2), 0.0);
  // |omega| <= |z0| + t + rho on the interval; coarse but certified.
  spec.norm_bound[0] = 1.0 + std::max(std::abs(spec.t_lo), std::abs(spec.t_hi)) + spec.rho;
  // On each (disjoint) bump support omega' = v + offset * phi' * 2/kappa with
  // offset orthogonal to the unit vector v, so the speed bound is Pythagorean.
  double slope = 2.0 * bump.norm(1) * spec.rho / spec.kappa;
  spec.norm_bound[1] = half * std::sqrt(1.0 + slope * slope);
  spec.d_factor[1] = L * bump.norm(1);
  for (int k = 2; k <= d + 1; ++k) {
    spec.d_factor[static_cast<size_t>(k)] = std::pow(L, k) * bump.norm(k);
    spec.norm_bound[static_cast<size_t>(k)] =
        spec.d_factor[static_cast<size_t>(k)] * spec.rho / std::pow(spec.kappa, k);
    spec.nu_d = std::max(spec.nu_d, spec.norm_bound[static_cast<size_t>(k)]);
  }
  if (!(spec.norm_bound[1] < 1.0)) throw std::logic_error("unit-speed certification failed");
  return spec;
}

Vec curve_eval(const CurveSpec& spec, double eta, int k) {
  if (eta < -1.0 - 1e-12 || eta > 1.0 + 1e-12) throw std::invalid_argument("parameter out of range");
  if (k < 0 || k > spec.d + 1) throw std::invalid_argument("derivative order out of range");
  const double half = spec.length() / 2.0;
  double t = spec.t_lo + (eta + 1.0) * half;
  return raw_eval(spec, t, k) * std::pow(half, k);
}

double nu_d_of_curve(const CurveSpec& spec, int d) {
  if (d > spec.d) throw std::invalid_argument("derivative order out of range");
  double nu = 0;
  for (int k = 2; k <= d + 1; ++k) nu = std::max(nu, spec.norm_bound[static_cast<size_t>(k)]);
  return nu;
}

}  // namespace rigidity
