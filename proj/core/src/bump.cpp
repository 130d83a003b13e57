#include "rigidity/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace rigidity {

namespace {

// Gauss-Legendre 8-point nodes/weights on [-1, 1].
constexpr double kGlNode[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

double kernel(double y) {
  double w = 1.0 - y * y;
  if (w <= 1e-13) return 0.0;
  return std::exp(1.0 - 1.0 / w);
}

std::vector<double> poly_derivative(const std::vector<double>& p) {
  if (p.size() <= 1) return {0.0};
  std::vector<double> d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

std::vector<double> poly_add(std::vector<double> p, const std::vector<double>& q) {
  if (q.size() > p.size()) p.resize(q.size(), 0.0);
  for (size_t i = 0; i < q.size(); ++i) p[i] += q[i];
  return p;
}

double poly_eval(const std::vector<double>& p, double y) {
  double acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * y + p[i];
  return acc;
}

}  // namespace

double BumpFunction::kernel_deriv(double y, int j) const {
  if (j == 0) return kernel(y);
  double w = 1.0 - y * y;
  if (w <= 1e-13) return 0.0;
  return poly_eval(q_[static_cast<size_t>(j)], y) * std::pow(w, -2.0 * j) * kernel(y);
}

double BumpFunction::primitive(double x) const {
  if (x <= 0) return 0.0;
  if (x >= 1) return total_;
  double panel_width = 1.0 / panels_;
  int full = static_cast<int>(std::floor(x / panel_width));
  double acc = cumulative_[static_cast<size_t>(full)];
  double lo = full * panel_width;
  double mid = 0.5 * (lo + x), half = 0.5 * (x - lo);
  for (int i = 0; i < 8; ++i) acc += half * kGlWeight[i] * kernel(2.0 * (mid + half * kGlNode[i]) - 1.0);
  return acc;
}

double BumpFunction::eval(double t, int k) const {
  if (k < 0 || k > d_max_) throw std::invalid_argument("derivative order out of range");
  double u = std::abs(t);
  if (u >= a_) return 0.0;
  double x = 1.0 - u / a_;  // in (0, 1]
  if (k == 0) return primitive(x) / total_;
  // T^{(k)}(x) = 2^{k-1} B^{(k-1)}(2x-1) / total; chain through x = 1 -+ t/a.
  double tk = std::ldexp(1.0, k - 1) * kernel_deriv(2.0 * x - 1.0, k - 1) / total_;
  double sign = (t > 0 && (k % 2 == 1)) ? -1.0 : 1.0;
  return sign * tk / std::pow(a_, k);
}

BumpFunction BumpFunction::build(double a, int d_max) {
  if (!(a > 0) || a > 1.0) throw std::invalid_argument("support half-width must be in (0, 1]");
  if (d_max < 1 || d_max > 10) throw std::invalid_argument("d_max out of range");

  BumpFunction b;
  b.a_ = a;
  b.d_max_ = d_max;

  // Numerator polynomials: B^{(j)}(y) = Q_j(y) (1-y^2)^{-2j} B(y).
  b.q_.resize(static_cast<size_t>(d_max + 2));
  b.q_[0] = {1.0};
  for (int j = 0; j <= d_max; ++j) {
    const std::vector<double>& qj = b.q_[static_cast<size_t>(j)];
    std::vector<double> one_minus = {1.0, 0.0, -1.0};  // 1 - y^2
    std::vector<double> term1 = poly_mul(poly_derivative(qj), poly_mul(one_minus, one_minus));
    std::vector<double> term2 =
        poly_mul({0.0, 4.0 * j}, poly_mul(qj, one_minus));  // 4j y Q_j (1-y^2)
    std::vector<double> term3 = poly_mul({0.0, -2.0}, qj);  // -2y Q_j
    b.q_[static_cast<size_t>(j + 1)] = poly_add(poly_add(term1, term2), term3);
  }

  // Cumulative primitive of B(2u-1) over [0, 1].
  b.panels_ = 1024;
  b.cumulative_.resize(static_cast<size_t>(b.panels_ + 1), 0.0);
  double panel_width = 1.0 / b.panels_;
  for (int p = 0; p < b.panels_; ++p) {
    double lo = p * panel_width, mid = lo + 0.5 * panel_width, half = 0.5 * panel_width;
    double acc = 0;
    for (int i = 0; i < 8; ++i)
      acc += half * kGlWeight[i] * kernel(2.0 * (mid + half * kGlNode[i]) - 1.0);
    b.cumulative_[static_cast<size_t>(p + 1)] = b.cumulative_[static_cast<size_t>(p)] + acc;
  }
  b.total_ = b.cumulative_[static_cast<size_t>(b.panels_)];

  // Raw grid maxima of |B^{(j)}| up to one order past d_max, then a Lipschitz
  // pad so each table entry is a certified upper bound.
  const int grid = 1'000'000;
  std::vector<double> raw(static_cast<size_t>(d_max + 1), 0.0);
  double dy = 2.0 / grid;
  for (int j = 0; j <= d_max; ++j) {
    double m = 0;
    for (int i = 0; i <= grid; ++i) {
      double y = -1.0 + dy * i;
      m = std::max(m, std::abs(b.kernel_deriv(y, j)));
    }
    raw[static_cast<size_t>(j)] = m;
  }

  b.norms_.assign(static_cast<size_t>(d_max + 1), 0.0);
  b.norms_[0] = 1.0;
  for (int k = 1; k <= d_max; ++k) {
    double kernel_max = raw[static_cast<size_t>(k - 1)];
    double pad = (k <= d_max - 1) ? 0.5 * dy * raw[static_cast<size_t>(k)] * 1.05
                                  : kernel_max * 0.05;
    double certified = std::ldexp(1.0, k - 1) * (kernel_max + pad) /
                       (b.total_ * std::pow(a, k));
    b.norms_[static_cast<size_t>(k)] = certified;
  }

  if (b.norms_[1] > 2.0) throw std::runtime_error("bump M_1 certification failed");
  return b;
}

}  // namespace rigidity
