#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rigidity/point_set.hpp"
#include "rigidity/vec.hpp"

namespace rigidity {

/// Closed-form smooth scalar fields with exact partial derivatives up to
/// total order 6. Three families: polynomials, products of per-axis
/// sinusoids, and products of radial bump factors vanishing at given centers.
class TestField {
 public:
  enum class Kind { polynomial, trig_product, bump_product };

  struct PolyTerm {
    std::array<int, kMaxDim> expo{};
    double coeff = 0;
  };

  int dim() const { return n_; }
  Kind kind() const { return kind_; }

  double value(const Vec& x) const;

  /// Exact partial derivative for a multi-index with |alpha| <= 6.
  double partial(const Vec& x, const std::array<int, kMaxDim>& alpha) const;

  /// Max-coordinate norm of the order-k derivative tensor at x:
  /// max over |alpha| = k of |partial(x, alpha)|.
  double max_partial_norm(const Vec& x, int order) const;

  static TestField polynomial(int n, std::vector<PolyTerm> terms);
  static TestField random_polynomial(int n, int degree, uint64_t seed);
  /// Product over axes of sin(freq_i * x_i + phase_i).
  static TestField trig_product(int n, std::vector<double> freq, std::vector<double> phase);
  /// amplitude * product over centers of (1 - exp(-|x-p|^2 / width^2)).
  static TestField bump_product(int n, std::vector<Vec> centers, double width, double amplitude);

  void set_amplitude(double a) { amplitude_ = a; }
  double amplitude() const { return amplitude_; }

 private:
  TestField() = default;
  int n_ = 0;
  Kind kind_ = Kind::polynomial;
  std::vector<PolyTerm> terms_;                 // polynomial
  std::vector<double> freq_, phase_;            // trig_product
  std::vector<Vec> centers_;                    // bump_product
  double width_ = 1;
  double amplitude_ = 1;
};

inline constexpr int kMaxFieldOrder = 6;

/// Normalized field vanishing on Z: a bump_product with one factor per point,
/// rescaled so the empirical sup over the unit ball is 1 within 1e-3.
/// Requires an explicit Z with at most 1000 points.
TestField vanishing_on(const PointSet& z, int smoothness, uint64_t seed);

/// Empirical sup of |f| over the unit ball (seeded sampling plus local
/// refinement); used for normalization and for soundness checks.
double empirical_sup(const TestField& f, int samples, uint64_t seed);

/// Empirical max over sampled ball points of the order-k derivative norm.
double empirical_derivative_max(const TestField& f, int order, int samples, uint64_t seed);

}  // namespace rigidity
