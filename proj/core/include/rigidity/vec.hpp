#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace rigidity {

inline constexpr int kMaxDim = 4;

/// Small dense vector for ambient dimensions 1..4.
struct Vec {
  int n = 0;
  std::array<double, kMaxDim> c{};

  Vec() = default;
  explicit Vec(int dim) : n(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dimension out of range");
  }
  Vec(std::initializer_list<double> xs) {
    if (xs.size() < 1 || xs.size() > kMaxDim) throw std::invalid_argument("dimension out of range");
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) c[i++] = x;
  }

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  Vec operator+(const Vec& o) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) r[i] = c[i] + o[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) r[i] = c[i] - o[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) r[i] = c[i] * s;
    return r;
  }
  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) c[i] += o[i];
    return *this;
  }

  double dot(const Vec& o) const {
    double s = 0;
    for (int i = 0; i < n; ++i) s += c[i] * o[i];
    return s;
  }
  double norm2() const { return std::sqrt(dot(*this)); }
  double norm_inf() const {
    double m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(c[i]));
    return m;
  }
  Vec normalized() const {
    double len = norm2();
    if (len == 0) throw std::invalid_argument("cannot normalize zero vector");
    return *this * (1.0 / len);
  }

  std::vector<double> to_vector() const { return {c.begin(), c.begin() + n}; }
  static Vec from_vector(const std::vector<double>& xs) {
    if (xs.size() < 1 || xs.size() > kMaxDim) throw std::invalid_argument("dimension out of range");
    Vec r(static_cast<int>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) r.c[i] = xs[i];
    return r;
  }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.n; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace rigidity
