#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigidity/chain_rule.hpp"
#include "rigidity/covering.hpp"
#include "rigidity/curve.hpp"
#include "rigidity/line_geometry.hpp"
#include "rigidity/point_set.hpp"

namespace rigidity {

/// One probed boundary point with its full witness chain.
struct ThicknessWitness {
  Vec z0;
  double eps = 0;
  double kappa = 0;
  LineCertificate cert;
  CurveSpec curve;
  double nu_d = 0;
};

/// Certified lower bound on the d-rigidity of Z, re-derivable from the
/// stored witnesses alone.
struct RigidityCertificate {
  int d = 0;
  double bound = 0;
  std::string route;     // "ThicknessC3", "EntropyZeta" or "HDense"
  std::string sampling;  // "uniform" (scale-based) or "sampled-z0"
  ChainRuleConstants constants;
  CoveringProfile profile;
  std::vector<ThicknessWitness> witnesses;
};

struct CertifyResult {
  bool certified = false;
  RigidityCertificate cert;  // partially filled on failure
  std::string bottleneck;    // set when not certified
};

struct CertifyConfig {
  int z0_samples = 8;
  uint64_t seed = 1;
  std::vector<double> eps_ladder;  // empty = default dyadic ladder
  SearchBudget budget;
  double bump_support = 0.9;
};

/// Runs the full line -> selection -> curve chain at one boundary point and
/// returns the realized thickness witness. Errors: "density insufficient"
/// when the covering condition fails.
ThicknessWitness thickness_upper_bound(const PointSet& z, const Vec& z0, int d, double eps,
                                       double kappa, const ChainRuleConstants& constants,
                                       const BumpFunction& bump, const SearchBudget& budget,
                                       uint64_t seed);

/// End-to-end certification. Never throws on an uncertifiable input; the
/// result carries the bottleneck quantity instead.
CertifyResult certify(const PointSet& z, int d, const CertifyConfig& config = {});

struct HDenseCheck {
  bool ok = false;
  double threshold = 0;  // xi * s^(n(d+1))
  double margin = 0;     // threshold - h
};

/// Arithmetic gate h <= xi * s^(n(d+1)) for planning grid experiments.
HDenseCheck h_dense_check(int n, int d, double s, double h, const ChainRuleConstants& constants);

/// Divided-difference lower bound (d+1)! |value| / prod |t0 - tau_j| on the
/// top derivative of any function vanishing at the zeros with |g(t0)|=|value|.
double one_d_lower_bound(double t0, const std::vector<double>& zeros, double value_at_t0);

/// Recomputes the certified bound from the witnesses alone; equals
/// cert.bound bit-for-bit for every issued certificate.
double replay_bound(const RigidityCertificate& cert);

struct SoundnessReport {
  bool counterexample = false;
  double min_ratio = 0;  // min over sampled fields of M_{d+1}(f) / bound
  int fields_checked = 0;
};

/// Samples seeded functions vanishing on Z with empirical sup 1 and verifies
/// their top derivative exceeds the certified bound. Sampling can only
/// falsify a certificate, never validate it.
SoundnessReport soundness_check(const PointSet& z, const RigidityCertificate& cert, int fields,
                                uint64_t seed);

}  // namespace rigidity
