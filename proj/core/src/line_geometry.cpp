#include "rigidity/line_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "rigidity/rng.hpp"

namespace rigidity {

namespace {

constexpr double kGeomTol = 1e-12;

struct Interval {
  double lo = 0, hi = 0;
  bool empty() const { return lo > hi; }
};

// Parameter interval of the ray from z0 inside the ball of radius r.
Interval clip_to_ball(const LineThroughPoint& line, double r) {
  double b = line.z0.dot(line.v);
  double disc = b * b - (1.0 - r * r);
  if (disc <= 0) return {1.0, 0.0};
  double sq = std::sqrt(disc);
  return {std::max(0.0, -b - sq), -b + sq};
}

// Clip [t.lo, t.hi] against the closed box [lo, hi] per axis (slab test).
Interval clip_to_box(const LineThroughPoint& line, Interval t, const std::array<double, kMaxDim>& lo,
                     const std::array<double, kMaxDim>& hi) {
  for (int i = 0; i < line.z0.n && !t.empty(); ++i) {
    double p = line.z0[i], d = line.v[i];
    double a = lo[static_cast<size_t>(i)] - kGeomTol, b = hi[static_cast<size_t>(i)] + kGeomTol;
    if (std::abs(d) < 1e-15) {
      if (p < a || p > b) return {1.0, 0.0};
      continue;
    }
    double t0 = (a - p) / d, t1 = (b - p) / d;
    if (t0 > t1) std::swap(t0, t1);
    t.lo = std::max(t.lo, t0);
    t.hi = std::min(t.hi, t1);
  }
  return t;
}

bool segment_hits_cube(const LineThroughPoint& line, Interval t, const CubeKey& key, double eps) {
  std::array<double, kMaxDim> lo{}, hi{};
  for (int i = 0; i < line.z0.n; ++i) {
    lo[static_cast<size_t>(i)] = static_cast<double>(key.k[static_cast<size_t>(i)]) * eps;
    hi[static_cast<size_t>(i)] = lo[static_cast<size_t>(i)] + eps;
  }
  return !clip_to_box(line, t, lo, hi).empty();
}

// Either a brute-force list of occupied cubes, or a full-density grid box
// counted in closed form (the astronomically fine regime).
struct Evaluator {
  int n = 0;
  double eps = 0;
  bool fast = false;
  std::array<int64_t, kMaxDim> lo_idx{}, hi_idx{};  // fast path: occupied index box
  std::vector<CubeKey> occ;                         // explicit path

  static Evaluator build(const PointSet& z, const GridSpec& g) {
    Evaluator e;
    e.n = z.dim();
    e.eps = g.epsilon;
    if (z.is_implicit() && z.grid().h <= g.epsilon * (1 + 1e-12)) {
      // Spacing never skips a cube, so the occupied indices per axis form a
      // contiguous range and the occupied set is their product box.
      const ImplicitGridDesc& grid = z.grid();
      e.fast = true;
      for (int i = 0; i < e.n; ++i) {
        double base = grid.axis_base(i);
        double last = base + static_cast<double>(grid.axis_count(i) - 1) * grid.h;
        e.lo_idx[static_cast<size_t>(i)] = lowest_cube_index(base, e.eps);
        e.hi_idx[static_cast<size_t>(i)] = highest_cube_index(last, e.eps);
      }
      return e;
    }
    CubeSet set = occupied_cubes(z, g.epsilon);
    e.occ.assign(set.begin(), set.end());
    std::sort(e.occ.begin(), e.occ.end());
    return e;
  }

  Interval fast_box_interval(const LineThroughPoint& line) const {
    Interval t = clip_to_ball(line, kClipRadius);
    if (t.empty()) return t;
    std::array<double, kMaxDim> lo{}, hi{};
    for (int i = 0; i < n; ++i) {
      lo[static_cast<size_t>(i)] = static_cast<double>(lo_idx[static_cast<size_t>(i)]) * eps;
      hi[static_cast<size_t>(i)] = static_cast<double>(hi_idx[static_cast<size_t>(i)] + 1) * eps;
    }
    return clip_to_box(line, t, lo, hi);
  }

  // Grid planes of one axis crossed strictly inside (t0, t].
  int64_t axis_crossings(const LineThroughPoint& line, int axis, double t0, double t) const {
    double d = line.v[axis];
    if (std::abs(d) < 1e-15) return 0;
    double a = line.z0[axis] + d * t0, b = line.z0[axis] + d * t;
    if (a > b) std::swap(a, b);
    // Planes strictly between the endpoints; the tolerance keeps the box entry
    // and exit planes (whose parameters the clipping computed up to roundoff)
    // from being miscounted as interior crossings.
    double tol = 1e-9 * eps;
    int64_t kmin = static_cast<int64_t>(std::floor((a + tol) / eps)) + 1;
    int64_t kmax = static_cast<int64_t>(std::ceil((b - tol) / eps)) - 1;
    return std::max<int64_t>(0, kmax - kmin + 1);
  }

  int64_t count(const LineThroughPoint& line) const {
    if (fast) {
      Interval t = fast_box_interval(line);
      if (t.empty()) return 0;
      int64_t c = 1;
      for (int i = 0; i < n; ++i) c += axis_crossings(line, i, t.lo, t.hi);
      return c;
    }
    Interval t = clip_to_ball(line, kClipRadius);
    if (t.empty()) return 0;
    int64_t c = 0;
    for (const CubeKey& key : occ)
      if (segment_hits_cube(line, t, key, eps)) ++c;
    return c;
  }
};

int dominant_axis(const Vec& v) {
  int best = 0;
  for (int i = 1; i < v.n; ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  return best;
}

// Greedy feasibility: can we pick d+1 projections with consecutive gaps >= g?
bool gap_feasible(const std::vector<double>& sorted_t, int need, double gap,
                  std::vector<size_t>* picks) {
  if (picks) picks->clear();
  int taken = 0;
  double last = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < sorted_t.size() && taken < need; ++i) {
    if (sorted_t[i] - last >= gap) {
      if (picks) picks->push_back(i);
      last = sorted_t[i];
      ++taken;
    }
  }
  return taken >= need;
}

}  // namespace

void LineThroughPoint::validate() const {
  if (z0.n != v.n) throw std::invalid_argument("line dimension mismatch");
  if (std::abs(z0.norm2() - 1.0) > 1e-12) throw std::invalid_argument("z0 must be a unit vector");
  if (std::abs(v.norm2() - 1.0) > 1e-12) throw std::invalid_argument("v must be a unit vector");
  double b = z0.dot(v);
  double dist2 = 1.0 - b * b;
  if (b >= 0 || dist2 > kHatBallRadius * kHatBallRadius + 1e-9)
    throw std::invalid_argument("ray misses the radius-1/3 ball");
}

double LineThroughPoint::distance(const Vec& p) const {
  Vec w = p - z0;
  Vec perp = w - v * w.dot(v);
  return perp.norm2();
}

LineCertificate make_line_certificate(const LineThroughPoint& line, std::vector<Vec> selected,
                                      int d) {
  if (static_cast<int>(selected.size()) != d + 1)
    throw std::invalid_argument("certificate needs exactly d+1 points");
  std::sort(selected.begin(), selected.end(), [&](const Vec& a, const Vec& b) {
    return line.projection(a) < line.projection(b);
  });
  LineCertificate c;
  c.line = line;
  c.selected = std::move(selected);
  c.d = d;
  c.kappa = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < c.selected.size(); ++i) {
    c.rho = std::max(c.rho, line.distance(c.selected[i]));
    if (i > 0) {
      double gap = line.projection(c.selected[i]) - line.projection(c.selected[i - 1]);
      c.kappa = std::min(c.kappa, gap);
    }
  }
  if (!(c.kappa > 0)) throw std::invalid_argument("coincident projections in certificate");
  c.mu_d = c.rho / std::pow(c.kappa, d);
  return c;
}

int64_t crossing_count(const LineThroughPoint& line, const PointSet& z, const GridSpec& g) {
  line.validate();
  g.validate(z.dim());
  return Evaluator::build(z, g).count(line);
}

double beta_full(int n) {
  switch (n) {
    case 1: return 1.0;
    case 2: return 2.0;
    case 3: return M_PI;
    case 4: return 4.0 * M_PI / 3.0;
    default: throw std::invalid_argument("dimension out of range");
  }
}

double beta_bar_closed_form(int n) {
  double alpha = std::asin(kHatBallRadius);
  switch (n) {
    case 1: return 1.0;
    case 2: return 2.0 * alpha;
    case 3: return 2.0 * M_PI * (1.0 - std::cos(alpha));
    case 4: return 2.0 * M_PI * (alpha - std::sin(alpha) * std::cos(alpha));
    default: throw std::invalid_argument("dimension out of range");
  }
}

AverageCrossingResult average_crossing(const Vec& z0, const PointSet& z, const GridSpec& g,
                                       int64_t samples, uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("too few samples");
  g.validate(z.dim());
  const int n = z.dim();
  Evaluator eval = Evaluator::build(z, g);
  Rng rng(seed);
  // Measure of the half-sphere of directions pointing into the ball side.
  double hemisphere = 0;
  switch (n) {
    case 2: hemisphere = M_PI; break;
    case 3: hemisphere = 2.0 * M_PI; break;
    case 4: hemisphere = M_PI * M_PI; break;
    default: throw std::invalid_argument("dimension out of range");
  }
  const double hit_cos = std::sqrt(1.0 - kHatBallRadius * kHatBallRadius);
  AverageCrossingResult out;
  double total = 0;
  for (int64_t i = 0; i < samples; ++i) {
    Vec v = rng.sphere_direction(n);
    if (v.dot(z0) > 0) v = v * -1.0;
    if (-v.dot(z0) < hit_cos) continue;  // line misses the radius-1/3 ball
    ++out.hit_samples;
    total += static_cast<double>(eval.count(LineThroughPoint{z0, v}));
  }
  if (out.hit_samples > 0) out.mean = total / static_cast<double>(out.hit_samples);
  out.beta_bar =
      hemisphere * static_cast<double>(out.hit_samples) / static_cast<double>(samples);
  return out;
}

FindLineResult find_line(const Vec& z0, const PointSet& z, const GridSpec& g, int64_t target_n,
                         const SearchBudget& budget, uint64_t seed) {
  g.validate(z.dim());
  const int n = z.dim();
  if (z0.n != n) throw std::invalid_argument("z0 dimension mismatch");
  Evaluator eval = Evaluator::build(z, g);
  const double alpha = std::asin(kHatBallRadius);
  Vec u = z0 * -1.0;  // cap axis

  // Orthonormal tangent frame at z0.
  std::array<Vec, kMaxDim> frame;
  int frame_size = 0;
  for (int axis = 0; axis < n && frame_size < n - 1; ++axis) {
    Vec e(n);
    e[axis] = 1.0;
    Vec w = e - u * e.dot(u);
    for (int j = 0; j < frame_size; ++j) w = w - frame[static_cast<size_t>(j)] * w.dot(frame[static_cast<size_t>(j)]);
    double len = w.norm2();
    if (len > 1e-9) frame[static_cast<size_t>(frame_size++)] = w * (1.0 / len);
  }

  auto cap_direction = [&](double theta, double psi1, double psi2) {
    // theta in [0, alpha) from the cap axis; psi* select the tangent direction.
    Vec t(n);
    if (n == 2) {
      t = frame[0] * (theta < 0 ? -1.0 : 1.0);
      theta = std::abs(theta);
    } else if (n == 3) {
      t = frame[0] * std::cos(psi1) + frame[1] * std::sin(psi1);
    } else {
      double c = std::cos(psi2);
      t = (frame[0] * std::cos(psi1) + frame[1] * std::sin(psi1)) * std::sqrt(std::max(0.0, 1 - c * c)) +
          frame[2] * c;
      double len = t.norm2();
      t = len > 1e-12 ? t * (1.0 / len) : frame[0];
    }
    return u * std::cos(theta) + t * std::sin(theta);
  };

  Rng rng(seed);
  Vec best_v = u;
  int64_t best_count = eval.count(LineThroughPoint{z0, u});
  auto consider = [&](const Vec& v) {
    int64_t c = eval.count(LineThroughPoint{z0, v});
    if (c > best_count || (c == best_count && lex_less(v, best_v))) {
      best_count = c;
      best_v = v;
    }
  };

  const int sweep = std::max(budget.directions, 8);
  if (n == 2) {
    double jitter = rng.uniform(-0.05, 0.05) * 2 * alpha / sweep;
    for (int i = 0; i < sweep; ++i) {
      double theta = -alpha + 2 * alpha * (i + 0.5) / sweep + jitter;
      consider(cap_direction(theta, 0, 0));
    }
    // Local refinement around the best angle found.
    double best_theta = std::atan2(best_v.dot(frame[0]), best_v.dot(u));
    double window = 4 * alpha / sweep;
    for (int r = 0; r < budget.refine_rounds; ++r) {
      int m = std::max(budget.refine_directions, 8);
      for (int i = 0; i <= m; ++i) consider(cap_direction(best_theta - window + 2 * window * i / m, 0, 0));
      best_theta = std::atan2(best_v.dot(frame[0]), best_v.dot(u));
      window *= 4.0 / m;
    }
  } else {
    for (int i = 0; i < sweep; ++i) {
      double theta = alpha * std::sqrt(halton(static_cast<uint64_t>(i) + 1, 2));
      double psi1 = 2 * M_PI * halton(static_cast<uint64_t>(i) + 1, 3);
      double psi2 = M_PI * halton(static_cast<uint64_t>(i) + 1, 5);
      consider(cap_direction(theta, psi1, psi2));
    }
    double sigma = alpha / std::sqrt(static_cast<double>(sweep));
    for (int r = 0; r < budget.refine_rounds; ++r) {
      Vec center = best_v;
      for (int i = 0; i < std::max(budget.refine_directions, 8); ++i) {
        Vec v(n);
        for (int j = 0; j < n; ++j) v[j] = center[j] + sigma * rng.gaussian();
        double len = v.norm2();
        if (len < 1e-9 || v.dot(u) <= 0) continue;
        consider(v * (1.0 / len));
      }
      sigma *= 0.25;
    }
  }

  FindLineResult res;
  res.line = LineThroughPoint{z0, best_v};
  res.achieved = best_count;
  res.reached = best_count >= target_n;
  return res;
}

LineCertificate select_separated_points(const LineThroughPoint& line, const PointSet& z,
                                        const GridSpec& g, int d, double kappa_target) {
  line.validate();
  g.validate(z.dim());
  const int n = z.dim();
  const double eps = g.epsilon;
  if (!(kappa_target > 10.0 * eps))
    throw std::invalid_argument("kappa target too small for the scale");
  Evaluator eval = Evaluator::build(z, g);
  const int64_t stride =
      std::max<int64_t>(1, static_cast<int64_t>(std::floor(2.0 * n * n * kappa_target / eps)));

  std::vector<Vec> selected;
  std::string rule = "stride";

  if (eval.fast) {
    // Closed-form regime: cubes along the line, indexed by crossing ordinal.
    Interval t = eval.fast_box_interval(line);
    if (t.empty()) throw std::runtime_error("insufficient crossings");
    int64_t total = 1;
    for (int i = 0; i < n; ++i) total += eval.axis_crossings(line, i, t.lo, t.hi);
    if (total < d + 1) throw std::runtime_error("insufficient crossings");
    int64_t step = stride;
    if (static_cast<int64_t>(d) * stride >= total) {
      // Stride overshoots: spread the d+1 picks evenly over the crossed cubes.
      rule = "greedy";
      step = (total - 1) / d;
      if (step < 1) throw std::runtime_error("insufficient crossings");
    }

    auto crossings_before = [&](double tt) {
      int64_t c = 0;
      for (int i = 0; i < n; ++i) c += eval.axis_crossings(line, i, t.lo, tt);
      return c;
    };
    auto event_time = [&](int64_t q) {
      // Smallest t with q crossings behind it (q >= 1).
      double lo = t.lo, hi = t.hi;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (crossings_before(mid) >= q) hi = mid; else lo = mid;
      }
      return hi;
    };

    const ImplicitGridDesc& grid = z.grid();
    for (int j = 0; j <= d; ++j) {
      int64_t q = static_cast<int64_t>(j) * step;  // ordinal of the crossed cube
      double ta = (q == 0) ? t.lo : event_time(q);
      double tb = (q + 1 >= total) ? t.hi : event_time(q + 1);
      Vec inside = line.at(0.5 * (ta + tb));
      Vec rep(n);
      for (int i = 0; i < n; ++i) {
        int64_t cube = static_cast<int64_t>(std::floor(inside[i] / eps));
        double low = static_cast<double>(cube) * eps;
        double base = grid.axis_base(i);
        int64_t idx = static_cast<int64_t>(std::ceil((low - base) / grid.h - 1e-9));
        idx = std::clamp<int64_t>(idx, 0, grid.axis_count(i) - 1);
        rep[i] = base + static_cast<double>(idx) * grid.h;
      }
      selected.push_back(rep);
    }
    LineCertificate cert = make_line_certificate(line, std::move(selected), d);
    cert.crossing_count = total;
    cert.rule = rule;
    if (cert.kappa < kappa_target || cert.rho > std::sqrt(static_cast<double>(n)) * eps * (1 + 1e-9))
      throw std::runtime_error("insufficient crossings");
    return cert;
  }

  // Explicit regime: per-cube lexicographic-minimum representatives.
  std::vector<Vec> pts = z.materialize();
  std::unordered_map<CubeKey, Vec, CubeKeyHash> reps;
  for (const Vec& p : pts)
    for (const CubeKey& key : point_cubes(p, eps)) {
      auto it = reps.find(key);
      if (it == reps.end() || lex_less(p, it->second)) reps[key] = p;
    }

  Interval t = clip_to_ball(line, kClipRadius);
  std::vector<Vec> crossed;
  for (const auto& [key, rep] : reps)
    if (!t.empty() && segment_hits_cube(line, t, key, eps)) crossed.push_back(rep);
  std::sort(crossed.begin(), crossed.end(), lex_less);
  crossed.erase(std::unique(crossed.begin(), crossed.end(),
                            [](const Vec& a, const Vec& b) { return !lex_less(a, b) && !lex_less(b, a); }),
                crossed.end());
  int64_t total = static_cast<int64_t>(crossed.size());
  if (total < d + 1) throw std::runtime_error("insufficient crossings");

  // Order along the dominant coordinate of v (ties: lower axis index wins the
  // dominance; equal coordinates fall back to projection order).
  int axis = dominant_axis(line.v);
  double sign = line.v[axis] >= 0 ? 1.0 : -1.0;
  std::sort(crossed.begin(), crossed.end(), [&](const Vec& a, const Vec& b) {
    if (a[axis] * sign != b[axis] * sign) return a[axis] * sign < b[axis] * sign;
    return line.projection(a) < line.projection(b);
  });

  bool stride_ok = static_cast<int64_t>(d) * stride < total;
  if (stride_ok) {
    selected.clear();
    for (int j = 0; j <= d; ++j) selected.push_back(crossed[static_cast<size_t>(j) * static_cast<size_t>(stride)]);
    double kappa = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= d; ++j)
      kappa = std::min(kappa, std::abs(line.projection(selected[static_cast<size_t>(j)]) -
                                       line.projection(selected[static_cast<size_t>(j) - 1])));
    if (!(kappa >= kappa_target)) stride_ok = false;
  }
  if (!stride_ok) {
    rule = "greedy";
    std::vector<double> proj;
    std::vector<Vec> by_proj = crossed;
    std::sort(by_proj.begin(), by_proj.end(), [&](const Vec& a, const Vec& b) {
      return line.projection(a) < line.projection(b);
    });
    proj.reserve(by_proj.size());
    for (const Vec& p : by_proj) proj.push_back(line.projection(p));
    std::vector<size_t> picks;
    if (!gap_feasible(proj, d + 1, kappa_target, &picks))
      throw std::runtime_error("insufficient crossings");
    selected.clear();
    for (size_t i : picks) selected.push_back(by_proj[i]);
  }

  LineCertificate cert = make_line_certificate(line, std::move(selected), d);
  cert.crossing_count = total;
  cert.rule = rule;
  if (cert.kappa < kappa_target * (1 - 1e-12)) throw std::runtime_error("insufficient crossings");
  return cert;
}

}  // namespace rigidity
