#include "rigidity/point_set.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rigidity {

int64_t ImplicitGridDesc::axis_count(int axis) const {
  // base + i*h <= corner + s, with a roundoff guard so that e.g. offset=h/2,
  // s/h integral gives exactly s/h points.
  double span = s - offset[axis];
  if (span < 0) return 0;
  return static_cast<int64_t>(std::floor(span / h + 1e-9)) + 1;
}

PointSet PointSet::explicit_set(int n, std::vector<Vec> points, std::string label,
                                bool raw_cube_set) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
  for (const Vec& p : points) {
    if (p.n != n) throw std::invalid_argument("point dimension mismatch");
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(p[i])) throw std::invalid_argument("non-finite point");
    if (!raw_cube_set && p.norm2() > kHatBallRadius + 1e-12)
      throw std::invalid_argument("point outside the radius-1/3 ball");
  }
  PointSet z;
  z.n_ = n;
  z.pts_ = std::move(points);
  z.label_ = std::move(label);
  z.raw_ = raw_cube_set;
  return z;
}

PointSet PointSet::implicit_grid(int n, double s, double h, Vec offset, Vec corner,
                                 std::string label) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
  if (!(h > 0) || !(h <= s)) throw std::invalid_argument("grid requires 0 < h <= s");
  if (offset.n != n || corner.n != n) throw std::invalid_argument("grid vector dimension mismatch");
  PointSet z;
  z.n_ = n;
  z.grid_ = ImplicitGridDesc{s, h, offset, corner};
  z.label_ = std::move(label);
  return z;
}

bool PointSet::empty() const {
  if (grid_) {
    for (int i = 0; i < n_; ++i)
      if (grid_->axis_count(i) == 0) return true;
    return false;
  }
  return pts_.empty();
}

const std::vector<Vec>& PointSet::points() const {
  if (grid_) throw std::logic_error("points() called on an implicit grid");
  return pts_;
}

const ImplicitGridDesc& PointSet::grid() const {
  if (!grid_) throw std::logic_error("grid() called on an explicit set");
  return *grid_;
}

double PointSet::count() const {
  if (!grid_) return static_cast<double>(pts_.size());
  double c = 1;
  for (int i = 0; i < n_; ++i) c *= static_cast<double>(grid_->axis_count(i));
  return c;
}

std::vector<Vec> PointSet::materialize(int64_t cap) const {
  if (!grid_) return pts_;
  double total = count();
  if (total > static_cast<double>(cap))
    throw std::runtime_error("implicit grid too large to materialize");
  std::vector<int64_t> counts(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) counts[static_cast<size_t>(i)] = grid_->axis_count(i);
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<int64_t> idx(static_cast<size_t>(n_), 0);
  while (true) {
    Vec p(n_);
    for (int i = 0; i < n_; ++i)
      p[i] = grid_->axis_base(i) + static_cast<double>(idx[static_cast<size_t>(i)]) * grid_->h;
    out.push_back(p);
    int axis = n_ - 1;
    while (axis >= 0) {
      if (++idx[static_cast<size_t>(axis)] < counts[static_cast<size_t>(axis)]) break;
      idx[static_cast<size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

double PointSet::min_pairwise_distance() const {
  if (grid_) return grid_->h;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts_.size(); ++i)
    for (size_t j = i + 1; j < pts_.size(); ++j)
      best = std::min(best, (pts_[i] - pts_[j]).norm2());
  return best;
}

}  // namespace rigidity
