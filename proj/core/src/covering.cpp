#include "rigidity/covering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rigidity/rng.hpp"

namespace rigidity {

namespace {

constexpr double kBoundaryTol = 1e-9;

bool on_cube_boundary(double x, double eps, int64_t* index_out) {
  double q = x / eps;
  double r = std::round(q);
  if (std::abs(q - r) <= kBoundaryTol * std::max(1.0, std::abs(q))) {
    *index_out = static_cast<int64_t>(r);
    return true;
  }
  return false;
}

// Lowest / highest closed-cube index containing x.
int64_t lowest_index(double x, double eps) {
  int64_t r;
  if (on_cube_boundary(x, eps, &r)) return r - 1;
  return static_cast<int64_t>(std::floor(x / eps));
}

int64_t highest_index(double x, double eps) {
  int64_t r;
  if (on_cube_boundary(x, eps, &r)) return r;
  return static_cast<int64_t>(std::floor(x / eps));
}

// Distinct closed-cube indices hit by the arithmetic progression
// base + i*h, i = 0..m-1, along one axis.
double axis_occupied_count(double base, double h, int64_t m, double eps) {
  if (m <= 0) return 0;
  if (m == 1) return static_cast<double>(highest_index(base, eps) - lowest_index(base, eps) + 1);
  double last = base + static_cast<double>(m - 1) * h;
  if (h <= eps * (1 + 1e-12)) {
    // Steps never skip a cube, so the hit indices form a contiguous range.
    return static_cast<double>(highest_index(last, eps) - lowest_index(base, eps) + 1);
  }
  if (m <= 2'000'000) {
    std::vector<int64_t> idx;
    idx.reserve(static_cast<size_t>(2 * m));
    for (int64_t i = 0; i < m; ++i) {
      double x = base + static_cast<double>(i) * h;
      int64_t lo = lowest_index(x, eps), hi = highest_index(x, eps);
      idx.push_back(lo);
      if (hi != lo) idx.push_back(hi);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return static_cast<double>(idx.size());
  }
  // Sparse huge progressions: every point sits in its own cube.
  return static_cast<double>(m);
}

}  // namespace

void GridSpec::validate(int) const {
  if (!(epsilon > 0) || epsilon > 0.1 * (1 + 1e-12))
    throw std::invalid_argument("epsilon out of range");
}

int64_t lowest_cube_index(double x, double eps) { return lowest_index(x, eps); }
int64_t highest_cube_index(double x, double eps) { return highest_index(x, eps); }

std::vector<int64_t> axis_cube_indices(double x, double eps) {
  int64_t lo = lowest_index(x, eps), hi = highest_index(x, eps);
  if (lo == hi) return {lo};
  return {lo, hi};
}

std::vector<CubeKey> point_cubes(const Vec& p, double eps) {
  std::array<std::vector<int64_t>, kMaxDim> per_axis;
  for (int i = 0; i < p.n; ++i) per_axis[static_cast<size_t>(i)] = axis_cube_indices(p[i], eps);
  std::vector<CubeKey> out;
  std::array<size_t, kMaxDim> sel{};
  while (true) {
    CubeKey key;
    key.n = p.n;
    for (int i = 0; i < p.n; ++i)
      key.k[static_cast<size_t>(i)] = per_axis[static_cast<size_t>(i)][sel[static_cast<size_t>(i)]];
    out.push_back(key);
    int axis = p.n - 1;
    while (axis >= 0) {
      if (++sel[static_cast<size_t>(axis)] < per_axis[static_cast<size_t>(axis)].size()) break;
      sel[static_cast<size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

CubeSet occupied_cubes(const std::vector<Vec>& pts, double eps) {
  CubeSet set;
  set.reserve(pts.size() * 2);
  for (const Vec& p : pts)
    for (const CubeKey& key : point_cubes(p, eps)) set.insert(key);
  return set;
}

CubeSet occupied_cubes(const PointSet& z, double eps, int64_t cap) {
  return occupied_cubes(z.materialize(cap), eps);
}

double covering_count(const PointSet& z, double eps) {
  if (z.empty()) throw std::invalid_argument("empty set");
  if (!z.is_implicit()) return static_cast<double>(occupied_cubes(z.points(), eps).size());
  const ImplicitGridDesc& g = z.grid();
  double prod = 1;
  for (int axis = 0; axis < z.dim(); ++axis)
    prod *= axis_occupied_count(g.axis_base(axis), g.h, g.axis_count(axis), eps);
  return prod;
}

int64_t covering_number(const PointSet& z, const GridSpec& g) {
  g.validate(z.dim());
  double m = covering_count(z, g.epsilon);
  if (m > 9.0e15) throw std::overflow_error("covering count exceeds integer range");
  return static_cast<int64_t>(std::llround(m));
}

CoveringProfile covering_profile(const PointSet& z, int d,
                                 const std::vector<double>& eps_ladder, double xi1) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  if (eps_ladder.empty()) throw std::invalid_argument("empty ladder");
  for (size_t i = 1; i < eps_ladder.size(); ++i)
    if (!(eps_ladder[i] < eps_ladder[i - 1]))
      throw std::invalid_argument("ladder must be strictly decreasing");

  CoveringProfile prof;
  prof.d = d;
  prof.xi1 = xi1;
  const int n = z.dim();
  const double adm_slope = 10.0 * std::sqrt(static_cast<double>(n));
  for (double eps : eps_ladder) {
    GridSpec g{eps};
    g.validate(n);
    CoveringEntry e;
    e.epsilon = eps;
    e.covering = covering_count(z, eps);
    e.kappa = e.covering * std::pow(eps, n) / xi1;
    e.admissible = (eps <= 0.1 + 1e-15) && (e.kappa >= adm_slope * eps);
    if (e.admissible) {
      double zeta = e.covering * std::pow(eps, static_cast<double>(n) - 1.0 / (d + 1));
      if (zeta > prof.zeta_d) {
        prof.zeta_d = zeta;
        prof.eps0 = eps;
        prof.kappa0 = e.kappa;
      }
    }
    prof.entries.push_back(e);
  }
  return prof;
}

std::vector<double> dyadic_ladder(int n, int max_scales, double floor_scale) {
  double eps = std::min(0.1, 1.0 / (10.0 * std::sqrt(static_cast<double>(n))));
  std::vector<double> ladder;
  for (int k = 0; k < max_scales; ++k) {
    if (floor_scale > 0 && eps < floor_scale) break;
    ladder.push_back(eps);
    eps *= 0.5;
  }
  return ladder;
}

BoxDimensionEstimate box_dimension_estimate(const PointSet& z,
                                            const std::vector<double>& eps_ladder) {
  if (eps_ladder.size() < 3) throw std::invalid_argument("ladder needs at least 3 scales");
  std::vector<double> xs, ys;
  for (double eps : eps_ladder) {
    xs.push_back(std::log(1.0 / eps));
    ys.push_back(std::log(covering_count(z, eps)));
  }
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw std::invalid_argument("degenerate ladder");
  BoxDimensionEstimate est;
  est.slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - est.slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (est.slope * xs[i] + intercept);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / n);
  return est;
}

bool h_density_predicate(const std::vector<Vec>& pts, int n, double s, double h,
                         const Vec& corner) {
  int64_t m = static_cast<int64_t>(std::ceil(s / h - 1e-9));
  double total = std::pow(static_cast<double>(m), n);
  if (total > 1e7) throw std::invalid_argument("too many sub-cubes to verify");
  std::vector<char> covered(static_cast<size_t>(total), 0);
  auto flatten = [&](const std::array<int64_t, kMaxDim>& idx) {
    int64_t f = 0;
    for (int i = 0; i < n; ++i) f = f * m + idx[static_cast<size_t>(i)];
    return static_cast<size_t>(f);
  };
  for (const Vec& p : pts) {
    // Mark every h-sub-cube whose closed body contains p.
    std::array<std::vector<int64_t>, kMaxDim> per_axis;
    bool inside = true;
    for (int i = 0; i < n; ++i) {
      double rel = p[i] - corner[i];
      if (rel < -1e-12 || rel > s + 1e-12) {
        inside = false;
        break;
      }
      std::vector<int64_t> idx = axis_cube_indices(rel, h);
      std::vector<int64_t> clamped;
      for (int64_t k : idx)
        if (k >= 0 && k < m) clamped.push_back(k);
      if (clamped.empty()) clamped.push_back(std::clamp<int64_t>(idx.front(), 0, m - 1));
      per_axis[static_cast<size_t>(i)] = clamped;
    }
    if (!inside) continue;
    std::array<size_t, kMaxDim> sel{};
    while (true) {
      std::array<int64_t, kMaxDim> idx{};
      for (int i = 0; i < n; ++i)
        idx[static_cast<size_t>(i)] =
            per_axis[static_cast<size_t>(i)][sel[static_cast<size_t>(i)]];
      covered[flatten(idx)] = 1;
      int axis = n - 1;
      while (axis >= 0) {
        if (++sel[static_cast<size_t>(axis)] < per_axis[static_cast<size_t>(axis)].size()) break;
        sel[static_cast<size_t>(axis)] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  for (char c : covered)
    if (!c) return false;
  return true;
}

PointSet generate_h_dense(int n, double s, double h, double perturbation, uint64_t seed) {
  if (!(h > 0) || !(h <= s)) throw std::invalid_argument("requires 0 < h <= s");
  if (s > 0.2 + 1e-12) throw std::invalid_argument("cube side must be at most 0.2");
  if (perturbation < 0 || perturbation > h / 8 + 1e-15)
    throw std::invalid_argument("perturbation must be at most h/8");

  const double half = h / 2;
  int64_t m = static_cast<int64_t>(std::ceil(s / half - 1e-9));
  double total = std::pow(static_cast<double>(m), n);
  if (total > 5e6) throw std::invalid_argument("grid too large");

  Vec corner(n);
  for (int i = 0; i < n; ++i) corner[i] = -s / 2;

  Rng rng(seed);
  std::vector<Vec> pts;
  pts.reserve(static_cast<size_t>(total));
  std::array<int64_t, kMaxDim> idx{};
  while (true) {
    Vec p(n);
    for (int i = 0; i < n; ++i) {
      p[i] = corner[i] + (static_cast<double>(idx[static_cast<size_t>(i)]) + 0.5) * half;
      if (perturbation > 0) p[i] += rng.uniform(-perturbation, perturbation);
    }
    pts.push_back(p);
    int axis = n - 1;
    while (axis >= 0) {
      if (++idx[static_cast<size_t>(axis)] < m) break;
      idx[static_cast<size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }

  if (!h_density_predicate(pts, n, s, h, corner))
    throw std::logic_error("generated set failed the h-density predicate");
  return PointSet::explicit_set(n, std::move(pts), "h-dense");
}

}  // namespace rigidity
