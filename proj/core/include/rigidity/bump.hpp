#pragma once

#include <vector>

namespace rigidity {

/// Compactly supported C-infinity bump on [-a, a] with phi(0) = 1, built so
/// that the certified first-derivative norm satisfies M_1(phi) <= 2.
///
/// The profile is the integrated standard mollifier kernel
/// B(y) = exp(1 - 1/(1 - y^2)): phi rises as the normalized primitive of B on
/// [-a, 0] and falls symmetrically on [0, a]. All derivatives of order >= 1
/// have the closed form of B-derivatives (rational-polynomial times B), so
/// the norm table is certified from exact derivative evaluations on a dense
/// grid plus a modulus-of-continuity pad.
class BumpFunction {
 public:
  /// A default-constructed bump is an empty placeholder; use build().
  BumpFunction() = default;

  /// Construction fails if the certified M_1 bound exceeds 2.
  static BumpFunction build(double a, int d_max);

  double support_halfwidth() const { return a_; }
  int max_order() const { return d_max_; }

  /// phi^{(k)}(t) for 0 <= k <= max_order(); identically 0 outside (-a, a).
  double eval(double t, int k) const;

  /// Certified upper bound on max_t |phi^{(k)}(t)|, k = 0..max_order().
  double norm(int k) const { return norms_[static_cast<size_t>(k)]; }
  const std::vector<double>& norm_table() const { return norms_; }

 private:
  double kernel_deriv(double y, int j) const;  // B^{(j)}(y)
  double primitive(double x) const;            // int_0^x B(2u-1) du

  double a_ = 0;
  int d_max_ = 0;
  double total_ = 0;                          // primitive(1)
  std::vector<std::vector<double>> q_;        // numerator polynomials of B^{(j)}
  std::vector<double> norms_;
  std::vector<double> cumulative_;            // per-panel primitive table
  int panels_ = 0;
};

inline BumpFunction build_bump(double a, int d_max) { return BumpFunction::build(a, d_max); }

}  // namespace rigidity
