#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "rigidity/point_set.hpp"
#include "rigidity/vec.hpp"

namespace rigidity {

/// Closed axis-aligned eps-cubes anchored at the origin.
struct GridSpec {
  double epsilon = 0;

  void validate(int n) const;
};

/// Integer index tuple of an eps-cube [k*eps, (k+1)*eps] per axis.
struct CubeKey {
  int n = 0;
  std::array<int64_t, kMaxDim> k{};

  bool operator==(const CubeKey& o) const { return n == o.n && k == o.k; }
  bool operator<(const CubeKey& o) const { return k < o.k; }
};

struct CubeKeyHash {
  size_t operator()(const CubeKey& c) const {
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < c.n; ++i) {
      h ^= static_cast<uint64_t>(c.k[static_cast<size_t>(i)]);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

using CubeSet = std::unordered_set<CubeKey, CubeKeyHash>;

/// Indices of the closed cubes containing coordinate x along one axis. A
/// coordinate on a shared face yields two indices (inclusive convention).
std::vector<int64_t> axis_cube_indices(double x, double eps);

/// Smallest / largest closed-cube index containing coordinate x.
int64_t lowest_cube_index(double x, double eps);
int64_t highest_cube_index(double x, double eps);

/// All closed eps-cubes containing the point (1, 2 or 4... per incidence).
std::vector<CubeKey> point_cubes(const Vec& p, double eps);

/// Occupied-cube set of an explicit point list.
CubeSet occupied_cubes(const std::vector<Vec>& pts, double eps);

/// Occupied-cube set of a point set; implicit grids are materialized up to the
/// cap. Throws past the cap (use covering_count for closed-form counts).
CubeSet occupied_cubes(const PointSet& z, double eps, int64_t cap = 2'000'000);

/// Covering count M(eps, Z) as a real number; exact per-axis closed form for
/// implicit grids of any size, hash-set enumeration for explicit sets.
double covering_count(const PointSet& z, double eps);

/// M(eps, Z) as a positive integer. Errors: "empty set", "epsilon out of
/// range", and overflow past int64 for astronomically large grids.
int64_t covering_number(const PointSet& z, const GridSpec& g);

struct CoveringEntry {
  double epsilon = 0;
  double covering = 0;  // M(eps, Z); exact integer value held in a double
  double kappa = 0;     // M * eps^n / xi1
  bool admissible = false;
};

struct CoveringProfile {
  int d = 0;
  double xi1 = 0;
  std::vector<CoveringEntry> entries;
  double zeta_d = 0;
  double eps0 = 0;    // scale attaining the zeta_d maximum (0 when none admissible)
  double kappa0 = 0;  // kappa(eps0)
};

/// Per-scale covering counts, kappa(eps), admissibility and the discretized
/// sup defining zeta_d. `eps_ladder` must be strictly decreasing and in range.
CoveringProfile covering_profile(const PointSet& z, int d,
                                 const std::vector<double>& eps_ladder, double xi1);

/// Default dyadic ladder from 1/10 downward; extended until it drops below
/// `floor_scale` (clamped to at most `max_scales` entries).
std::vector<double> dyadic_ladder(int n, int max_scales = 40, double floor_scale = 0.0);

struct BoxDimensionEstimate {
  double slope = 0;
  double residual = 0;  // RMS residual of the log-log fit
};

/// Least-squares slope of log M(eps,Z) against log(1/eps) over the ladder.
BoxDimensionEstimate box_dimension_estimate(const PointSet& z,
                                            const std::vector<double>& eps_ladder);

/// Every h-sub-cube of the s-cube at `corner` contains a point of `pts`.
bool h_density_predicate(const std::vector<Vec>& pts, int n, double s, double h,
                         const Vec& corner);

/// Perturbed half-spacing grid in the s-cube, translated to sit inside the
/// radius-1/3 ball (cube centered at the origin). Verifies the h-density
/// predicate before returning.
PointSet generate_h_dense(int n, double s, double h, double perturbation, uint64_t seed);

}  // namespace rigidity
