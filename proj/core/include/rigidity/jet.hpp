#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "rigidity/vec.hpp"

namespace rigidity {

/// Index tables for truncated multivariate Taylor expansions (shared per
/// (n, order) pair). Coefficient i corresponds to multi-index alphas[i] and
/// stores the Taylor coefficient, i.e. the partial derivative over alpha!.
struct JetTable {
  int n = 0;
  int order = 0;
  std::vector<std::array<int, kMaxDim>> alphas;
  std::map<std::array<int, kMaxDim>, int> position;
  // Pairs (i, j, k) with alphas[i] + alphas[j] = alphas[k], for fast products.
  std::vector<std::array<int, 3>> products;

  static const JetTable& get(int n, int order);
};

/// Truncated Taylor polynomial (jet) of a smooth function at a point.
class Jet {
 public:
  Jet(int n, int order) : table_(&JetTable::get(n, order)), c_(table_->alphas.size(), 0.0) {}

  int n() const { return table_->n; }
  int order() const { return table_->order; }
  double value() const { return c_[0]; }
  double& operator[](size_t i) { return c_[i]; }
  double operator[](size_t i) const { return c_[i]; }
  size_t size() const { return c_.size(); }

  static Jet constant(int n, int order, double v) {
    Jet j(n, order);
    j.c_[0] = v;
    return j;
  }
  /// The coordinate function x_i expanded at base value x0.
  static Jet variable(int n, int order, int axis, double x0) {
    Jet j(n, order);
    j.c_[0] = x0;
    if (order >= 1) {
      std::array<int, kMaxDim> a{};
      a[static_cast<size_t>(axis)] = 1;
      j.c_[static_cast<size_t>(j.table_->position.at(a))] = 1.0;
    }
    return j;
  }

  Jet operator+(const Jet& o) const {
    Jet r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Jet operator-(const Jet& o) const {
    Jet r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  Jet operator*(double s) const {
    Jet r = *this;
    for (double& x : r.c_) x *= s;
    return r;
  }
  Jet operator*(const Jet& o) const {
    Jet r(n(), order());
    for (const auto& [i, j, k] : table_->products)
      r.c_[static_cast<size_t>(k)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
    return r;
  }

  /// Compose with a scalar analytic function given its derivatives at value():
  /// derivs[k] = F^{(k)}(value()), k = 0..order.
  Jet compose(const std::vector<double>& derivs) const {
    Jet nil = *this;
    nil.c_[0] = 0.0;
    Jet result = constant(n(), order(), derivs[0]);
    Jet power = constant(n(), order(), 1.0);
    double fact = 1.0;
    for (int k = 1; k <= order(); ++k) {
      power = power * nil;
      fact *= k;
      result = result + power * (derivs[static_cast<size_t>(k)] / fact);
    }
    return result;
  }

  Jet exp() const {
    double e = std::exp(value());
    std::vector<double> d(static_cast<size_t>(order()) + 1, e);
    return compose(d);
  }
  Jet sin() const {
    std::vector<double> d(static_cast<size_t>(order()) + 1);
    double s = std::sin(value()), c = std::cos(value());
    const double cyc[4] = {s, c, -s, -c};
    for (int k = 0; k <= order(); ++k) d[static_cast<size_t>(k)] = cyc[k % 4];
    return compose(d);
  }
  Jet reciprocal() const {
    double v = value();
    if (std::abs(v) < 1e-300) throw std::domain_error("reciprocal of vanishing jet");
    // d[k] = (-1)^k k! / v^{k+1}
    std::vector<double> d(static_cast<size_t>(order()) + 1);
    double p = 1.0 / v, fact = 1.0;
    for (int k = 0; k <= order(); ++k) {
      d[static_cast<size_t>(k)] = fact * p;
      p /= -v;
      fact *= k + 1;
    }
    return compose(d);
  }

  /// Partial derivative value for a multi-index (coefficient times alpha!).
  double partial(const std::array<int, kMaxDim>& alpha) const {
    auto it = table_->position.find(alpha);
    if (it == table_->position.end()) throw std::invalid_argument("order overflow");
    double fact = 1.0;
    for (int i = 0; i < n(); ++i)
      for (int k = 2; k <= alpha[static_cast<size_t>(i)]; ++k) fact *= k;
    return c_[static_cast<size_t>(it->second)] * fact;
  }

 private:
  const JetTable* table_;
  std::vector<double> c_;
};

inline const JetTable& JetTable::get(int n, int order) {
  static std::map<std::pair<int, int>, JetTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  JetTable t;
  t.n = n;
  t.order = order;
  // Enumerate multi-indices by total degree, lexicographic within a degree.
  for (int deg = 0; deg <= order; ++deg) {
    std::array<int, kMaxDim> m{};
    auto recurse = [&](auto&& self, int axis, int remaining) -> void {
      if (axis == n - 1) {
        m[static_cast<size_t>(axis)] = remaining;
        t.alphas.push_back(m);
        return;
      }
      for (int take = remaining; take >= 0; --take) {
        m[static_cast<size_t>(axis)] = take;
        self(self, axis + 1, remaining - take);
      }
      m[static_cast<size_t>(axis)] = 0;
    };
    recurse(recurse, 0, deg);
  }
  for (size_t i = 0; i < t.alphas.size(); ++i) t.position[t.alphas[i]] = static_cast<int>(i);
  for (size_t i = 0; i < t.alphas.size(); ++i)
    for (size_t j = 0; j < t.alphas.size(); ++j) {
      std::array<int, kMaxDim> sum{};
      int total = 0;
      for (int k = 0; k < n; ++k) {
        sum[static_cast<size_t>(k)] = t.alphas[i][static_cast<size_t>(k)] + t.alphas[j][static_cast<size_t>(k)];
        total += sum[static_cast<size_t>(k)];
      }
      if (total <= order)
        t.products.push_back({static_cast<int>(i), static_cast<int>(j), t.position.at(sum)});
    }
  auto [ins, ok] = cache.emplace(key, std::move(t));
  (void)ok;
  return ins->second;
}

}  // namespace rigidity
