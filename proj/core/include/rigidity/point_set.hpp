#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/vec.hpp"

namespace rigidity {

/// Radius of the concentric ball that is required to contain every point set.
inline constexpr double kHatBallRadius = 1.0 / 3.0;

/// Regular grid of points with spacing h inside the cube of side s anchored at
/// `corner`. Point coordinates along axis j are corner[j] + offset[j] + i*h for
/// i = 0,1,... while they stay inside the cube. Covering counts for such grids
/// are computed per axis in closed form, never by materializing the product.
struct ImplicitGridDesc {
  double s = 0;
  double h = 0;
  Vec offset;
  Vec corner;

  int64_t axis_count(int axis) const;
  double axis_base(int axis) const { return corner[axis] + offset[axis]; }
};

/// Finite point cloud in dimension 1..4, stored explicitly or as a regular
/// grid description.
class PointSet {
 public:
  static PointSet explicit_set(int n, std::vector<Vec> points, std::string label = "",
                               bool raw_cube_set = false);
  static PointSet implicit_grid(int n, double s, double h, Vec offset, Vec corner,
                               std::string label = "");

  int dim() const { return n_; }
  bool is_implicit() const { return grid_.has_value(); }
  bool empty() const;
  const std::string& label() const { return label_; }
  bool raw_cube_set() const { return raw_; }

  const std::vector<Vec>& points() const;          // explicit only
  const ImplicitGridDesc& grid() const;            // implicit only

  /// Total point count (product of axis counts for grids).
  double count() const;

  /// Materialize an implicit grid (or return the explicit points). Throws when
  /// the grid holds more than `cap` points.
  std::vector<Vec> materialize(int64_t cap = 2'000'000) const;

  /// Exact minimal pairwise Euclidean distance (explicit sets; grids return h).
  double min_pairwise_distance() const;

 private:
  PointSet() = default;
  int n_ = 0;
  std::optional<ImplicitGridDesc> grid_;
  std::vector<Vec> pts_;
  std::string label_;
  bool raw_ = false;
};

}  // namespace rigidity
