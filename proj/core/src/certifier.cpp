#include "rigidity/certifier.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rigidity/rng.hpp"
#include "rigidity/test_fields.hpp"

namespace rigidity {

namespace {

std::vector<Vec> boundary_samples(int n, int count, uint64_t seed) {
  std::vector<Vec> out;
  if (n == 1) {
    out.push_back(Vec{1.0});
    if (count > 1) out.push_back(Vec{-1.0});
    return out;
  }
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    if (n == 2) {
      double phi = 2.0 * M_PI * (i + 0.5) / count;
      out.push_back(Vec{std::cos(phi), std::sin(phi)});
    } else {
      out.push_back(rng.sphere_direction(n));
    }
  }
  return out;
}

}  // namespace

ThicknessWitness thickness_upper_bound(const PointSet& z, const Vec& z0, int d, double eps,
                                       double kappa, const ChainRuleConstants& constants,
                                       const BumpFunction& bump, const SearchBudget& budget,
                                       uint64_t seed) {
  const int n = z.dim();
  if (!(eps > 0) || !(eps < kappa / (10.0 * std::sqrt(static_cast<double>(n))) * (1 + 1e-9)))
    throw std::invalid_argument("epsilon out of range");
  GridSpec g{eps};
  double m = covering_count(z, eps);
  double required = constants.xi1 * kappa / std::pow(eps, n);
  if (m < required * (1 - 1e-9)) throw std::runtime_error("density insufficient");

  int64_t target =
      static_cast<int64_t>(std::ceil(2.0 * n * n * (d + 1) * kappa / eps - 1e-9));
  FindLineResult fl = find_line(z0, z, g, target, budget, seed);
  if (!fl.reached) throw std::logic_error("line search failed in the guaranteed regime");

  ThicknessWitness w;
  w.z0 = z0;
  w.eps = eps;
  w.kappa = kappa;
  w.cert = select_separated_points(fl.line, z, g, d, kappa);
  w.curve = build_curve(w.cert, bump);
  w.nu_d = w.curve.nu_d;
  return w;
}

CertifyResult certify(const PointSet& z, int d, const CertifyConfig& config) {
  CertifyResult res;
  res.cert.d = d;
  const int n = z.dim();

  BumpFunction bump = build_bump(config.bump_support, d + 2);
  res.cert.constants = compute_constants(n, d, bump);
  const ChainRuleConstants& c = res.cert.constants;

  std::vector<double> ladder = config.eps_ladder;
  if (ladder.empty()) {
    double floor_scale = z.is_implicit() ? z.grid().h / 4.0 : 0.0;
    ladder = dyadic_ladder(n, z.is_implicit() ? 60 : 40, floor_scale);
  }
  if (z.empty()) {
    res.bottleneck = "empty set";
    return res;
  }
  res.cert.profile = covering_profile(z, d, ladder, c.xi1);
  const CoveringProfile& prof = res.cert.profile;

  if (!(prof.zeta_d > 0)) {
    res.bottleneck = "zeta_d = 0";
    return res;
  }

  double nu_bound = std::pow(c.xi3 / prof.zeta_d, d + 1);
  bool entropy_ok = nu_bound <= c.C3;

  // A scale-based certificate is still backed by an explicit witness chain at
  // one boundary point (the construction its argument goes through).
  auto probe = [&](const Vec& z0) {
    return thickness_upper_bound(z, z0, d, prof.eps0, prof.kappa0, c, bump, config.budget,
                                 config.seed);
  };

  if (entropy_ok) {
    std::string route = "EntropyZeta";
    if (z.is_implicit()) {
      HDenseCheck hd = h_dense_check(n, d, z.grid().s, z.grid().h, c);
      if (hd.ok) route = "HDense";
    }
    res.cert.route = route;
    res.cert.sampling = "uniform";
    res.cert.witnesses.push_back(probe(boundary_samples(n, 1, config.seed)[0]));
    res.cert.bound = c.C4;
    res.certified = true;
    return res;
  }

  // Fall back to direct probing of sampled boundary points.
  std::vector<Vec> probes = boundary_samples(n, config.z0_samples, config.seed);
  double worst_nu = 0;
  for (const Vec& z0 : probes) {
    try {
      ThicknessWitness w = probe(z0);
      worst_nu = std::max(worst_nu, w.nu_d);
      res.cert.witnesses.push_back(std::move(w));
    } catch (const std::exception& e) {
      res.bottleneck = e.what();
      return res;
    }
  }
  if (worst_nu > c.C3) {
    res.bottleneck = "nu_d = " + std::to_string(worst_nu) + " > C3 = " + std::to_string(c.C3);
    return res;
  }
  res.cert.route = "ThicknessC3";
  res.cert.sampling = "sampled-z0";
  res.cert.bound = c.C4;
  res.certified = true;
  return res;
}

HDenseCheck h_dense_check(int n, int d, double s, double h, const ChainRuleConstants& constants) {
  if (!(h > 0) || !(h <= s) || !(s <= 0.2 + 1e-12))
    throw std::invalid_argument("requires 0 < h <= s <= 0.2");
  HDenseCheck out;
  out.threshold = constants.xi * std::pow(s, n * (d + 1));
  out.margin = out.threshold - h;
  out.ok = h <= out.threshold;
  return out;
}

double one_d_lower_bound(double t0, const std::vector<double>& zeros, double value_at_t0) {
  if (zeros.empty()) throw std::invalid_argument("empty set");
  if (std::abs(std::abs(value_at_t0) - 1.0) > 1e-12)
    throw std::invalid_argument("value at t0 must have unit modulus");
  if (t0 < -1.0 || t0 > 1.0) throw std::invalid_argument("t0 out of range");
  double prod = 1;
  for (size_t i = 0; i < zeros.size(); ++i) {
    if (std::abs(zeros[i]) > 1.0 / 3.0 + 1e-12)
      throw std::invalid_argument("zeros must lie in [-1/3, 1/3]");
    for (size_t j = i + 1; j < zeros.size(); ++j)
      if (zeros[i] == zeros[j]) throw std::invalid_argument("coincident zeros");
    prod *= std::abs(t0 - zeros[i]);
  }
  if (!(prod > 0)) throw std::invalid_argument("t0 coincides with a zero");
  double fact = 1;
  for (size_t k = 2; k <= zeros.size(); ++k) fact *= static_cast<double>(k);
  return fact * std::abs(value_at_t0) / prod;
}

double replay_bound(const RigidityCertificate& cert) {
  const ChainRuleConstants& c = cert.constants;
  // Re-derive the constants identities.
  double c4 = 0.5 * c.C1 * (std::tgamma(cert.d + 2.0) / std::pow(2.0, cert.d + 1) - 0.1);
  if (cert.route == "EntropyZeta" || cert.route == "HDense") {
    // Recompute zeta from the stored covering entries.
    double zeta = 0;
    double n = static_cast<double>(c.n);
    for (const CoveringEntry& e : cert.profile.entries)
      if (e.admissible)
        zeta = std::max(zeta, e.covering * std::pow(e.epsilon, n - 1.0 / (cert.d + 1)));
    if (!(zeta > 0) || std::pow(c.xi3 / zeta, cert.d + 1) > c.C3)
      throw std::logic_error("certificate replay failed");
  }
  // Every route rests on explicit curve witnesses staying below C3.
  for (const ThicknessWitness& w : cert.witnesses) {
    LineCertificate re = make_line_certificate(w.cert.line, w.cert.selected, w.cert.d);
    if (std::abs(re.rho - w.cert.rho) > 1e-12 || std::abs(re.kappa - w.cert.kappa) > 1e-12 ||
        std::abs(re.mu_d - w.cert.mu_d) > 1e-12 * std::max(1.0, w.cert.mu_d))
      throw std::logic_error("certificate replay failed");
    CurveSpec curve = build_curve(re, w.curve.bump);
    if (cert.route != "ThicknessC3") continue;
    if (curve.nu_d > c.C3) throw std::logic_error("certificate replay failed");
  }
  return c4;
}

SoundnessReport soundness_check(const PointSet& z, const RigidityCertificate& cert, int fields,
                                uint64_t seed) {
  SoundnessReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const int n = z.dim();
  const int d = cert.d;
  for (int i = 0; i < fields; ++i) {
    TestField f = [&] {
      if (!z.is_implicit()) return vanishing_on(z, d + 1, seed + static_cast<uint64_t>(i));
      // Lattice regime: a sinusoid with the grid period vanishes on every
      // grid plane, hence on Z, and its top derivative is explicit.
      const ImplicitGridDesc& g = z.grid();
      Rng rng(seed + static_cast<uint64_t>(i));
      int axis = static_cast<int>(rng.uniform_int(0, n - 1));
      std::vector<double> freq(static_cast<size_t>(n)), phase(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) {
        if (j == axis) {
          freq[static_cast<size_t>(j)] = M_PI / g.h;
          phase[static_cast<size_t>(j)] = -M_PI * g.axis_base(j) / g.h;
        } else {
          freq[static_cast<size_t>(j)] = rng.uniform(0.1, 1.5);
          phase[static_cast<size_t>(j)] = M_PI / 2.0 + rng.uniform(-0.2, 0.2);
        }
      }
      return TestField::trig_product(n, std::move(freq), std::move(phase));
    }();
    double top = z.is_implicit()
                     ? [&] {
                         // The axis frequency alone already dominates: the
                         // pure (d+1)-st partial has magnitude (pi/h)^(d+1).
                         return std::pow(M_PI / z.grid().h, d + 1) / 2.0;
                       }()
                     : empirical_derivative_max(f, d + 1, 3000, seed + static_cast<uint64_t>(i));
    ++rep.fields_checked;
    double ratio = top / cert.bound;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    if (ratio < 1.0) rep.counterexample = true;
  }
  return rep;
}

}  // namespace rigidity
