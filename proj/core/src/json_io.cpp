#include "rigidity/json_io.hpp"

#include <stdexcept>

namespace rigidity {

json to_json(const Vec& v) {
  json arr = json::array();
  for (int i = 0; i < v.n; ++i) arr.push_back(v[i]);
  return arr;
}

Vec vec_from_json(const json& j, int expect_n) {
  if (!j.is_array()) throw std::invalid_argument("vector must be a JSON array");
  std::vector<double> xs = j.get<std::vector<double>>();
  Vec v = Vec::from_vector(xs);
  if (expect_n != 0 && v.n != expect_n) throw std::invalid_argument("vector dimension mismatch");
  return v;
}

json to_json(const PointSet& z) {
  json j;
  j["n"] = z.dim();
  if (z.is_implicit()) {
    const ImplicitGridDesc& g = z.grid();
    j["grid"] = {{"s", g.s}, {"h", g.h}, {"offset", to_json(g.offset)}, {"corner", to_json(g.corner)}};
  } else {
    json pts = json::array();
    for (const Vec& p : z.points()) pts.push_back(to_json(p));
    j["points"] = pts;
  }
  if (!z.label().empty()) j["label"] = z.label();
  if (z.raw_cube_set()) j["raw"] = true;
  return j;
}

PointSet point_set_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::string label = j.value("label", std::string());
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    return PointSet::implicit_grid(n, g.at("s").get<double>(), g.at("h").get<double>(),
                                   vec_from_json(g.at("offset"), n), vec_from_json(g.at("corner"), n),
                                   label);
  }
  std::vector<Vec> pts;
  for (const json& p : j.at("points")) pts.push_back(vec_from_json(p, n));
  return PointSet::explicit_set(n, std::move(pts), label, j.value("raw", false));
}

json to_json(const CoveringProfile& p) {
  json entries = json::array();
  for (const CoveringEntry& e : p.entries)
    entries.push_back({{"epsilon", e.epsilon},
                       {"covering", e.covering},
                       {"kappa", e.kappa},
                       {"admissible", e.admissible}});
  return json{{"d", p.d},         {"xi1", p.xi1},      {"entries", entries},
              {"zeta_d", p.zeta_d}, {"eps0", p.eps0},  {"kappa0", p.kappa0}};
}

json to_json(const BoxDimensionEstimate& e) {
  return json{{"slope", e.slope}, {"residual", e.residual}};
}

json to_json(const LineThroughPoint& line) {
  return json{{"z0", to_json(line.z0)}, {"v", to_json(line.v)}};
}

LineThroughPoint line_from_json(const json& j) {
  LineThroughPoint line{vec_from_json(j.at("z0")), vec_from_json(j.at("v"))};
  line.validate();
  return line;
}

json to_json(const LineCertificate& c) {
  json sel = json::array();
  for (const Vec& p : c.selected) sel.push_back(to_json(p));
  return json{{"line", to_json(c.line)},
              {"selected", sel},
              {"d", c.d},
              {"rho", c.rho},
              {"kappa", c.kappa},
              {"mu_d", c.mu_d},
              {"crossing_count", c.crossing_count},
              {"rule", c.rule}};
}

LineCertificate line_certificate_from_json(const json& j) {
  std::vector<Vec> selected;
  for (const json& p : j.at("selected")) selected.push_back(vec_from_json(p));
  LineCertificate c =
      make_line_certificate(line_from_json(j.at("line")), std::move(selected), j.at("d").get<int>());
  c.crossing_count = j.value("crossing_count", static_cast<int64_t>(0));
  c.rule = j.value("rule", std::string());
  return c;
}

json to_json(const CurveSpec& spec) {
  json anchors = json::array();
  for (const CurveSpec::Anchor& a : spec.anchors)
    anchors.push_back(
        {{"tau", a.tau}, {"offset", to_json(a.offset)}, {"point", to_json(a.point)}});
  return json{{"z0", to_json(spec.z0)},
              {"v", to_json(spec.v)},
              {"anchors", anchors},
              {"d", spec.d},
              {"kappa", spec.kappa},
              {"rho", spec.rho},
              {"t_lo", spec.t_lo},
              {"t_hi", spec.t_hi},
              {"bump_support", spec.bump.support_halfwidth()},
              {"norm_bound", spec.norm_bound},
              {"d_factor", spec.d_factor},
              {"nu_d", spec.nu_d}};
}

json to_json(const ChainRuleConstants& c) {
  json prov = json::object();
  for (const auto& [name, note] : c.provenance) prov[name] = note;
  return json{{"n", c.n},           {"d", c.d},       {"B1", c.B1},   {"B2", c.B2},
              {"B3", c.B3},         {"B4", c.B4},     {"B5", c.B5},   {"B6", c.B6},
              {"B7", c.B7},         {"B8", c.B8},     {"C1", c.C1},   {"C2", c.C2},
              {"C3", c.C3},         {"C4", c.C4},     {"theta_n", c.theta_n},
              {"xi1", c.xi1},       {"xi2", c.xi2},   {"xi3", c.xi3}, {"xi", c.xi},
              {"Dbar", c.Dbar},     {"provenance", prov}};
}

json to_json(const ThicknessWitness& w) {
  return json{{"z0", to_json(w.z0)},   {"eps", w.eps},
              {"kappa", w.kappa},      {"certificate", to_json(w.cert)},
              {"curve", to_json(w.curve)}, {"nu_d", w.nu_d}};
}

json to_json(const RigidityCertificate& cert) {
  json wit = json::array();
  for (const ThicknessWitness& w : cert.witnesses) wit.push_back(to_json(w));
  return json{{"d", cert.d},
              {"bound", cert.bound},
              {"route", cert.route},
              {"sampling", cert.sampling},
              {"constants", to_json(cert.constants)},
              {"profile", to_json(cert.profile)},
              {"witnesses", wit}};
}

json to_json(const CertifyResult& res) {
  json j;
  j["certified"] = res.certified;
  if (res.certified) {
    j["certificate"] = to_json(res.cert);
  } else {
    j["bottleneck"] = res.bottleneck;
    j["constants"] = to_json(res.cert.constants);
    if (!res.cert.profile.entries.empty()) j["profile"] = to_json(res.cert.profile);
  }
  return j;
}

json to_json(const RemezEstimate& est) {
  json basis = json::array();
  for (const auto& e : est.basis) {
    json expo = json::array();
    for (int i = 0; i < kMaxDim; ++i) expo.push_back(e[static_cast<size_t>(i)]);
    basis.push_back(expo);
  }
  json j{{"d", est.d},
         {"infinite", est.infinite},
         {"grid_resolution", est.grid_resolution},
         {"domain", est.domain == RemezDomain::cube ? "cube" : "ball"},
         {"witness", est.witness},
         {"basis", basis}};
  if (est.infinite) {
    j["lower"] = "inf";
    j["upper"] = "inf";
  } else {
    j["lower"] = est.lower;
    j["upper"] = est.upper;
  }
  return j;
}

json to_json(const FindLineResult& r) {
  return json{{"line", to_json(r.line)}, {"achieved", r.achieved}, {"reached", r.reached}};
}

}  // namespace rigidity
