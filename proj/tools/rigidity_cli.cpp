// Command-line front end: JSON in, JSON out, reproducible seeds.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rigidity/certifier.hpp"
#include "rigidity/chain_rule.hpp"
#include "rigidity/covering.hpp"
#include "rigidity/curve.hpp"
#include "rigidity/json_io.hpp"
#include "rigidity/line_geometry.hpp"
#include "rigidity/point_set.hpp"
#include "rigidity/remez.hpp"

namespace {

using rigidity::json;

int g_threads = 1;  // RIGIDITY_THREADS cap; module internals stay below it

std::string read_stream(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& path) {
  return json::parse(read_stream(path));
}

rigidity::PointSet load_point_set(const std::string& path) {
  return rigidity::point_set_from_json(parse_json(path));
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << j.dump(2) << "\n";
  }
}

std::vector<double> parse_ladder(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<double> default_ladder(const rigidity::PointSet& z) {
  double floor_scale = 0;
  int scales = 40;
  if (z.is_implicit()) {
    floor_scale = z.grid().h / 4;
    scales = 60;
  }
  return rigidity::dyadic_ladder(z.dim(), scales, floor_scale);
}

double constants_xi1(int n, int d) {
  rigidity::BumpFunction bump = rigidity::build_bump(0.9, d + 2);
  return rigidity::compute_constants(n, d, bump).xi1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("RIGIDITY_THREADS")) {
    g_threads = std::max(1, std::atoi(env));
  }
  (void)g_threads;

  CLI::App app{"Geometric density characteristics and rigidity certificates"};
  app.set_help_flag("--help", "Print help");
  app.require_subcommand(1);
  std::string in_path = "-";
  std::string out_path;
  app.add_option("--out", out_path, "Output file (default stdout)")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a point set");
  gen->require_subcommand(1);
  gen->set_help_flag("--help", "Print help");
  struct {
    int n = 2;
    double s = 0.2, h = 0.02, offset = -1, perturbation = 0;
    uint64_t seed = 1;
    std::string label;
  } g;
  auto* gen_grid = gen->add_subcommand("grid", "Regular grid inside an s-cube");
  gen_grid->set_help_flag("--help", "Print help");
  gen_grid->add_option("--n", g.n)->required();
  gen_grid->add_option("--s", g.s)->required();
  gen_grid->add_option("--h", g.h)->required();
  gen_grid->add_option("--offset", g.offset, "Per-axis offset (default h/2)");
  gen_grid->add_option("--label", g.label);
  auto* gen_hdense = gen->add_subcommand("hdense", "Perturbed h-dense set (explicit)");
  gen_hdense->set_help_flag("--help", "Print help");
  gen_hdense->add_option("--n", g.n)->required();
  gen_hdense->add_option("--s", g.s)->required();
  gen_hdense->add_option("--h", g.h)->required();
  gen_hdense->add_option("--perturbation", g.perturbation);
  gen_hdense->add_option("--seed", g.seed);

  // cover
  auto* cover = app.add_subcommand("cover", "Covering number M(eps, Z)");
  cover->set_help_flag("--help", "Print help");
  double eps = 0.01;
  cover->add_option("--eps", eps)->required();
  cover->add_option("--in", in_path, "Point-set JSON (default stdin)");

  // zeta
  auto* zeta = app.add_subcommand("zeta", "Covering profile and zeta_d");
  zeta->set_help_flag("--help", "Print help");
  int d = 1;
  std::string ladder_csv;
  bool csv = false;
  zeta->add_option("--d", d)->required();
  zeta->add_option("--ladder", ladder_csv, "Comma-separated eps values, decreasing");
  zeta->add_option("--in", in_path);
  zeta->add_flag("--csv", csv, "Emit entries as CSV instead of JSON");

  // dim
  auto* dim = app.add_subcommand("dim", "Box-dimension estimate");
  dim->set_help_flag("--help", "Print help");
  dim->add_option("--ladder", ladder_csv);
  dim->add_option("--in", in_path);

  // findline
  auto* findline = app.add_subcommand("findline", "Search for a many-crossing line");
  findline->set_help_flag("--help", "Print help");
  std::string z0_csv;
  int64_t target_n = 4;
  uint64_t seed = 1;
  rigidity::SearchBudget budget;
  double kappa_target = 0;
  int sel_d = 0;
  findline->add_option("--z0", z0_csv, "Boundary point, comma-separated coordinates")->required();
  findline->add_option("--eps", eps)->required();
  findline->add_option("--target", target_n);
  findline->add_option("--seed", seed);
  findline->add_option("--directions", budget.directions);
  findline->add_option("--in", in_path);
  findline->add_option("--select-d", sel_d, "Also select d+1 separated points");
  findline->add_option("--kappa", kappa_target, "Separation target for --select-d");

  // curve
  auto* curve = app.add_subcommand("curve", "Build the bump-deformed curve");
  curve->set_help_flag("--help", "Print help");
  int samples = 0;
  double bump_support = 0.9;
  curve->add_option("--in", in_path, "LineCertificate JSON");
  curve->add_option("--support", bump_support);
  curve->add_option("--samples", samples, "Also emit sampled curve points");
  curve->add_flag("--csv", csv, "Emit samples as CSV columns");

  // certify
  auto* certify = app.add_subcommand("certify", "End-to-end rigidity certificate");
  certify->set_help_flag("--help", "Print help");
  rigidity::CertifyConfig ccfg;
  certify->add_option("--d", d)->required();
  certify->add_option("--z0-samples", ccfg.z0_samples);
  certify->add_option("--seed", ccfg.seed);
  certify->add_option("--ladder", ladder_csv);
  certify->add_option("--directions", ccfg.budget.directions);
  certify->add_option("--in", in_path);

  // remez
  auto* remez = app.add_subcommand("remez", "Remez/norming bounds for finite Z");
  remez->set_help_flag("--help", "Print help");
  int resolution = 200;
  std::string domain = "ball";
  double rho_min = 0;
  remez->add_option("--d", d)->required();
  remez->add_option("--resolution", resolution);
  remez->add_option("--domain", domain)->check(CLI::IsMember({"ball", "cube"}));
  remez->add_option("--rho", rho_min, "Min pairwise distance for the two-sided form");
  remez->add_option("--in", in_path);

  // constants
  auto* constants = app.add_subcommand("constants", "Derived constants for (n, d)");
  constants->set_help_flag("--help", "Print help");
  int cn = 2, cd = 1;
  constants->add_option("n", cn)->required();
  constants->add_option("d", cd)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_grid->parsed()) {
        double off = g.offset < 0 ? g.h / 2 : g.offset;
        rigidity::Vec offset(g.n), corner(g.n);
        for (int i = 0; i < g.n; ++i) {
          offset[i] = off;
          corner[i] = -g.s / 2;
        }
        emit(rigidity::to_json(
                 rigidity::PointSet::implicit_grid(g.n, g.s, g.h, offset, corner, g.label)),
             out_path);
      } else {
        emit(rigidity::to_json(
                 rigidity::generate_h_dense(g.n, g.s, g.h, g.perturbation, g.seed)),
             out_path);
      }
    } else if (cover->parsed()) {
      rigidity::PointSet z = load_point_set(in_path);
      rigidity::GridSpec spec{eps};
      emit(json{{"eps", eps}, {"covering", rigidity::covering_number(z, spec)}}, out_path);
    } else if (zeta->parsed()) {
      rigidity::PointSet z = load_point_set(in_path);
      std::vector<double> ladder =
          ladder_csv.empty() ? default_ladder(z) : parse_ladder(ladder_csv);
      rigidity::CoveringProfile profile =
          rigidity::covering_profile(z, d, ladder, constants_xi1(z.dim(), d));
      if (csv) {
        std::ostringstream ss;
        ss << "epsilon,covering,kappa,admissible\n";
        for (const auto& e : profile.entries)
          ss << e.epsilon << "," << e.covering << "," << e.kappa << "," << e.admissible << "\n";
        if (out_path.empty() || out_path == "-") {
          std::cout << ss.str();
        } else {
          std::ofstream out(out_path);
          out << ss.str();
        }
      } else {
        emit(rigidity::to_json(profile), out_path);
      }
    } else if (dim->parsed()) {
      rigidity::PointSet z = load_point_set(in_path);
      // Scales below the grid spacing only flatten the log-log fit.
      std::vector<double> ladder =
          ladder_csv.empty()
              ? (z.is_implicit() ? rigidity::dyadic_ladder(z.dim(), 60, z.grid().h)
                                 : default_ladder(z))
              : parse_ladder(ladder_csv);
      emit(rigidity::to_json(rigidity::box_dimension_estimate(z, ladder)), out_path);
    } else if (findline->parsed()) {
      rigidity::PointSet z = load_point_set(in_path);
      rigidity::GridSpec spec{eps};
      rigidity::Vec z0 = rigidity::Vec::from_vector(parse_ladder(z0_csv));
      rigidity::FindLineResult res = rigidity::find_line(z0, z, spec, target_n, budget, seed);
      json j = rigidity::to_json(res);
      if (!res.reached) j["note"] = "target not reached";
      if (sel_d > 0) {
        j["certificate"] = rigidity::to_json(
            rigidity::select_separated_points(res.line, z, spec, sel_d, kappa_target));
      }
      emit(j, out_path);
    } else if (curve->parsed()) {
      rigidity::LineCertificate cert = rigidity::line_certificate_from_json(parse_json(in_path));
      rigidity::BumpFunction bump = rigidity::build_bump(bump_support, cert.d + 2);
      rigidity::CurveSpec spec = rigidity::build_curve(cert, bump);
      if (csv && samples > 0) {
        std::ostringstream ss;
        ss << "eta";
        for (int i = 0; i < spec.z0.n; ++i) ss << ",x" << i;
        ss << "\n";
        for (int i = 0; i < samples; ++i) {
          double eta = -1.0 + 2.0 * i / (samples - 1);
          rigidity::Vec p = rigidity::curve_eval(spec, eta, 0);
          ss << eta;
          for (int k = 0; k < p.n; ++k) ss << "," << p[k];
          ss << "\n";
        }
        if (out_path.empty() || out_path == "-") {
          std::cout << ss.str();
        } else {
          std::ofstream out(out_path);
          out << ss.str();
        }
      } else {
        json j = rigidity::to_json(spec);
        if (samples > 0) {
          json pts = json::array();
          for (int i = 0; i < samples; ++i) {
            double eta = -1.0 + 2.0 * i / (samples - 1);
            pts.push_back(rigidity::to_json(rigidity::curve_eval(spec, eta, 0)));
          }
          j["samples"] = pts;
        }
        emit(j, out_path);
      }
    } else if (certify->parsed()) {
      rigidity::PointSet z = load_point_set(in_path);
      if (!ladder_csv.empty()) ccfg.eps_ladder = parse_ladder(ladder_csv);
      rigidity::CertifyResult res = rigidity::certify(z, d, ccfg);
      emit(rigidity::to_json(res), out_path);
      return res.certified ? 0 : 2;
    } else if (remez->parsed()) {
      rigidity::PointSet z = load_point_set(in_path);
      rigidity::RemezDomain dom =
          domain == "cube" ? rigidity::RemezDomain::cube : rigidity::RemezDomain::ball;
      rigidity::RemezEstimate est = rigidity::remez_bounds(z, d, resolution, dom);
      json j = rigidity::to_json(est);
      rigidity::RemezRigidity rg = rigidity::rigidity_from_remez(est, d, rho_min);
      j["rigidity_lower"] = rg.lower;
      if (!rg.upper_note.empty()) j["rigidity_upper_note"] = rg.upper_note;
      emit(j, out_path);
    } else if (constants->parsed()) {
      rigidity::BumpFunction bump = rigidity::build_bump(0.9, cd + 2);
      emit(rigidity::to_json(rigidity::compute_constants(cn, cd, bump)), out_path);
    }
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return 0;
}
