#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigidity/covering.hpp"
#include "rigidity/point_set.hpp"
#include "rigidity/vec.hpp"

namespace rigidity {

/// Occupied cubes are clipped against this ball (1/10-neighborhood of the
/// radius-1/3 ball): every closed eps-cube meeting the point set lies inside.
inline constexpr double kClipRadius = kHatBallRadius + 0.1;

/// Line through a boundary point z0 of the unit sphere, directed into the
/// half-space containing the ball.
struct LineThroughPoint {
  Vec z0;
  Vec v;

  void validate() const;
  Vec at(double t) const { return z0 + v * t; }
  /// Parameter of the orthogonal projection of p onto the line.
  double projection(const Vec& p) const { return (p - z0).dot(v); }
  /// Euclidean distance from p to the (infinite) line.
  double distance(const Vec& p) const;
};

/// d+1 well-separated points of Z near a common line, with the realized
/// separation statistics. rho/kappa/mu_d are recomputable from z0/v/selected.
struct LineCertificate {
  LineThroughPoint line;
  std::vector<Vec> selected;  // ordered by increasing projection parameter
  int d = 0;
  double rho = 0;    // max point-to-line distance
  double kappa = 0;  // min consecutive projection gap
  double mu_d = 0;   // rho / kappa^d
  int64_t crossing_count = 0;
  std::string rule;  // "stride" or "greedy"

  /// True when 1/10 > kappa >= 10*rho (the curve-construction regime).
  bool admissible() const { return kappa < 0.1 && kappa >= 10.0 * rho; }
};

/// Recomputes rho, kappa, mu_d from the raw fields (selection order is
/// re-sorted by projection). Throws on fewer than d+1 points or zero gaps.
LineCertificate make_line_certificate(const LineThroughPoint& line, std::vector<Vec> selected,
                                      int d);

/// Number of distinct occupied eps-cubes of Z whose closed body meets the line
/// clipped to the 1/10-neighborhood of the ball. Exact geometry, no sampling.
int64_t crossing_count(const LineThroughPoint& line, const PointSet& z, const GridSpec& g);

struct AverageCrossingResult {
  double mean = 0;        // average crossings over directions hitting the ball
  double beta_bar = 0;    // estimated measure of the direction set L(z0)
  int64_t hit_samples = 0;
};

/// Monte-Carlo average of crossing_count over directions drawn uniformly from
/// the half-sphere at z0, restricted to lines meeting the radius-1/3 ball.
AverageCrossingResult average_crossing(const Vec& z0, const PointSet& z, const GridSpec& g,
                                       int64_t samples, uint64_t seed);

struct SearchBudget {
  int directions = 4096;
  int refine_rounds = 3;
  int refine_directions = 256;
};

struct FindLineResult {
  LineThroughPoint line;
  int64_t achieved = 0;
  bool reached = false;  // achieved >= target
};

/// Deterministic-given-seed search for a line through z0 crossing many
/// occupied cubes: low-discrepancy sweep over the direction cap followed by
/// local refinement. Returns the best line found; never throws on a miss.
FindLineResult find_line(const Vec& z0, const PointSet& z, const GridSpec& g, int64_t target_n,
                         const SearchBudget& budget, uint64_t seed);

/// Picks one Z-point per crossed cube (lexicographic minimum), orders along
/// the dominant coordinate of v, strides by floor(2 n^2 kappa_target / eps),
/// and falls back to a greedy max-min-gap selection on small instances.
/// Postconditions enforced directly: kappa >= kappa_target, rho <= sqrt(n)*eps.
LineCertificate select_separated_points(const LineThroughPoint& line, const PointSet& z,
                                        const GridSpec& g, int d, double kappa_target);

/// Closed-form measure beta_{n-1} of the full unit sphere cross-section scale
/// used by the averaging bound: 2, pi, 4*pi/3 for n = 2, 3, 4.
double beta_full(int n);

/// Closed-form measure of the direction cap of half-angle asin(1/3):
/// 2*asin(1/3) for n=2, and the corresponding spherical caps for n=3,4.
double beta_bar_closed_form(int n);

}  // namespace rigidity
