#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rigidity/line_geometry.hpp"
#include "rigidity/point_set.hpp"
#include "rigidity/rng.hpp"
#include "rigidity/vec.hpp"

namespace testutil {

using rigidity::Vec;

/// Coefficients of a central finite-difference stencil for the m-th
/// derivative with offsets -half..half, from the Taylor moment system.
inline std::vector<long double> fd_coefficients(int m, int half) {
  const int size = 2 * half + 1;
  if (m >= size) throw std::invalid_argument("stencil too small");
  // Solve V c = m! e_m where V[r][j] = offset_j^r.
  std::vector<std::vector<long double>> a(size, std::vector<long double>(size + 1, 0.0L));
  for (int r = 0; r < size; ++r) {
    for (int j = 0; j < size; ++j) {
      long double off = static_cast<long double>(j - half);
      a[r][static_cast<size_t>(j)] = std::pow(off, static_cast<long double>(r));
    }
    long double rhs = 0.0L;
    if (r == m) {
      rhs = 1.0L;
      for (int i = 2; i <= m; ++i) rhs *= i;
    }
    a[r][static_cast<size_t>(size)] = rhs;
  }
  for (int col = 0; col < size; ++col) {
    int piv = col;
    for (int r = col + 1; r < size; ++r)
      if (std::abs(a[r][static_cast<size_t>(col)]) > std::abs(a[piv][static_cast<size_t>(col)]))
        piv = r;
    std::swap(a[col], a[piv]);
    for (int r = 0; r < size; ++r) {
      if (r == col) continue;
      long double f = a[r][static_cast<size_t>(col)] / a[col][static_cast<size_t>(col)];
      for (int j = col; j <= size; ++j) a[r][static_cast<size_t>(j)] -= f * a[col][static_cast<size_t>(j)];
    }
  }
  std::vector<long double> c(static_cast<size_t>(size));
  for (int j = 0; j < size; ++j)
    c[static_cast<size_t>(j)] = a[j][static_cast<size_t>(size)] / a[j][static_cast<size_t>(j)];
  return c;
}

/// Central finite difference of the m-th derivative, high-order stencil.
inline double finite_difference(const std::function<double(double)>& f, double x, int m,
                                double h, int extra = 6) {
  int half = (m + extra) / 2 + 1;
  std::vector<long double> c = fd_coefficients(m, half);
  long double sum = 0.0L;
  for (int j = -half; j <= half; ++j)
    sum += c[static_cast<size_t>(j + half)] * static_cast<long double>(f(x + j * h));
  return static_cast<double>(sum / std::pow(static_cast<long double>(h), m));
}

/// Uniform random point in the ball of radius r.
inline Vec random_ball_point(rigidity::Rng& rng, int n, double r) {
  for (;;) {
    Vec p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-r, r);
    if (p.norm2() <= r) return p;
  }
}

/// Random admissible line certificate: boundary z0, direction into the ball,
/// d+1 near-line points with gaps >= kappa and offsets |.| <= rho_max.
inline rigidity::LineCertificate random_certificate(rigidity::Rng& rng, int n, int d,
                                                    double kappa, double rho_max) {
  Vec z0 = rng.sphere_direction(n);
  // Aim at a point near the center so the chord passes through the ball.
  Vec target = random_ball_point(rng, n, 0.2);
  Vec v = (target - z0).normalized();
  rigidity::LineThroughPoint line{z0, v};
  line.validate();

  double t0 = -z0.dot(v) - 0.15;  // start before the midpoint of the chord
  std::vector<Vec> pts;
  double t = t0;
  for (int j = 0; j <= d; ++j) {
    t += kappa * (1.0 + 0.3 * rng.uniform(0.0, 1.0));
    Vec offset(n);
    for (int i = 0; i < n; ++i) offset[i] = rng.uniform(-1.0, 1.0);
    offset = offset - v * offset.dot(v);
    double len = offset.norm2();
    if (len > 1e-12) offset = offset * (rng.uniform(0.2, 1.0) * rho_max / len);
    pts.push_back(line.at(t) + offset);
  }
  return rigidity::make_line_certificate(line, std::move(pts), d);
}

}  // namespace testutil
