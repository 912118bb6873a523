// Command-line front end: austere/stark checks, normal-form reduction,
// reduced-flow integration, full surface construction, helix closure, and
// the acceptance suite.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stark/pipeline.hpp"
#include "stark/verify.hpp"

namespace {

void dump_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw stark::ParseError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

int cmd_check(const std::string& file, double tol, std::optional<double> theta,
              const std::vector<int>& tilde, const std::string& json_out) {
  const stark::ShapeOperatorRep rep = stark::load_shape_operator(file);
  if (theta) {
    const stark::AustereReport rep_g =
        stark::check_general_austere(rep.mat(), *theta, tilde, tol);
    std::printf("general austere: %s (max violation %.3e, theta = %g)\n", yesno(rep_g.ok),
                rep_g.max_violation, *theta);
    if (!json_out.empty()) {
      dump_json(json_out, {{"general_austere", rep_g.ok},
                           {"max_violation", rep_g.max_violation},
                           {"residuals", rep_g.residuals}});
    }
    return rep_g.ok ? 0 : 1;
  }
  const stark::StarkReport sr = stark::check_stark(rep, tol);
  std::printf("austere: %s (max violation %.3e)\n", yesno(sr.austere.ok),
              sr.austere.max_violation);
  std::printf("stark:   %s (compat violation %.3e)\n", yesno(sr.ok), sr.compat_violation);
  nlohmann::json j = stark::stark_report_to_json(sr);
  if (sr.ok) {
    const stark::Classification cls = stark::classify(rep, tol);
    std::printf("hopf:    %s (border %.3e)\n", yesno(cls.is_hopf), cls.hopf_violation);
    if (cls.reducible) {
      std::printf("type:    reducible, k = %d, l = %d\n", cls.k, cls.l);
    } else {
      std::printf("type:    irreducible, l = %d\n", cls.l);
    }
    j["classification"] = {{"is_hopf", cls.is_hopf},
                           {"hopf_violation", cls.hopf_violation},
                           {"reducible", cls.reducible},
                           {"k", cls.k},
                           {"l", cls.l}};
  }
  if (!json_out.empty()) dump_json(json_out, j);
  return sr.ok ? 0 : 1;
}

int cmd_canon(const std::string& file, double tol, const std::string& json_out) {
  const stark::ShapeOperatorRep rep = stark::load_shape_operator(file);
  const stark::CanonicalForm cf = stark::reduce_to_canonical(rep, tol);
  if (cf.kind == stark::FormKind::Irreducible) {
    std::printf("kind: irreducible, l = %d\n", cf.l);
  } else {
    std::printf("kind: reducible, k = %d, l = %d%s\n", cf.k, cf.l,
                cf.hopf_degenerate ? " (hopf-degenerate)" : "");
  }
  std::printf("residual: %.3e, phi residual: %.3e\n", cf.residual, cf.phi_residual);
  if (!json_out.empty()) dump_json(json_out, stark::canonical_to_json(cf));
  return 0;
}

struct FlowArgs {
  std::optional<double> beta, mu, kappa;
  double c = 0.0, d = 0.0, v = 1.0;
  bool have_cd = false;
  stark::FlowConfig cfg;
  std::string csv;
};

int cmd_flow(FlowArgs& a) {
  stark::FlowConfig cfg = a.cfg;
  if (a.beta || a.mu || a.kappa) {
    if (!(a.beta && a.mu && a.kappa)) {
      throw stark::ParseError("--beta, --mu, --kappa must be given together");
    }
    const stark::ReducedState st = stark::to_reduced({*a.beta, *a.mu, *a.kappa});
    const stark::FirstIntegrals fi = stark::first_integrals(st);
    cfg.c0 = fi.c;
    cfg.d0 = fi.d;
    cfg.v0 = st.v;
  } else if (a.have_cd) {
    cfg.c0 = a.c;
    cfg.d0 = a.d;
    cfg.v0 = a.v;
  } else {
    throw stark::ParseError("seed the flow with --beta/--mu/--kappa or --c/--d/--v");
  }
  const stark::FlowResult flow = stark::integrate_flow(cfg);
  int valid = 0;
  for (int i = 0; i < flow.nx; ++i)
    for (int j = 0; j < flow.ny; ++j) valid += flow.valid_node(i, j) ? 1 : 0;
  std::printf("grid: %d x %d nodes, %d valid%s\n", flow.nx, flow.ny, valid,
              flow.cd_only ? " (axis data only)" : "");
  std::printf("first-integral drift: %.3e\n", flow.max_fi_drift);
  std::printf("ratio drift: %.3e (seed ratio %.12g)\n", flow.max_ratio_drift, flow.seed_ratio);
  if (!a.csv.empty()) stark::write_flow_csv(a.csv, flow);
  return 0;
}

int cmd_construct(const std::string& config_path, bool quiet) {
  std::ifstream in(config_path);
  if (!in) throw stark::ParseError("cannot open config: " + config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw stark::ParseError(std::string("config parse: ") + e.what());
  }
  const stark::ConstructConfig cfg = stark::construct_config_from_json(j);
  const stark::ConstructOutput out = stark::run_construct(cfg);
  if (!quiet) std::cout << out.report.dump(2) << '\n';
  return 0;
}

int cmd_helix(double beta, double mu, double kappa, long long max_den, double ratio_tol,
              const std::string& json_out) {
  const stark::FrameScalars fs{beta, mu, kappa};
  const stark::HelixSpec spec = stark::make_helix_spec(fs, max_den, ratio_tol);
  const stark::HelixCubic hc = stark::cubic_coeffs(fs);
  std::printf("spectrum: %.12g %.12g %.12g\n", spec.nu[0], spec.nu[1], spec.nu[2]);
  std::printf("cubic: A = %.12g, B = %.12g\n", hc.a_lin, hc.b_const);
  try {
    std::printf("ratio A^3/B^2 = %.12g\n", stark::invariant_ratio(fs));
  } catch (const stark::BZero&) {
    std::printf("ratio A^3/B^2 undefined (B = 0)\n");
  }
  if (spec.closure.closed) {
    if (spec.closure.degenerate) {
      std::printf("closure: degenerate (coincident angles)\n");
    } else {
      std::printf("closure: closed, length %.12g, gaps %lld:%lld\n", spec.closure.length,
                  spec.closure.n1, spec.closure.n2);
    }
  } else {
    std::printf("closure: not closed within max_den %lld, tol %.1e\n", max_den, ratio_tol);
  }
  if (!json_out.empty()) dump_json(json_out, stark::closure_to_json(spec, max_den, ratio_tol));
  return 0;
}

int cmd_verify(const std::string& work_dir) {
  const auto results = stark::run_acceptance_criteria(work_dir);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stark: austere/stark shape operators and stark surfaces in CP^2"};
  app.require_subcommand(1);

  // check
  std::string check_file, check_json;
  double check_tol = stark::kDefaultTol;
  std::optional<double> check_theta;
  std::vector<int> check_tilde;
  auto* check = app.add_subcommand("check", "austere/stark verdict for a shape operator");
  check->add_option("file", check_file, "operator JSON")->required();
  check->add_option("--tol", check_tol, "residual tolerance");
  double theta_val = 0.0;
  auto* theta_opt = check->add_option("--theta", theta_val,
                                      "general austere angle (radians); switches mode");
  check->add_option("--tilde", check_tilde, "restricted index set for --theta mode")
      ->delimiter(',');
  check->add_option("--json-out", check_json, "write the full report as JSON");

  // canon
  std::string canon_file, canon_json;
  double canon_tol = stark::kDefaultTol;
  auto* canon = app.add_subcommand("canon", "reduce a stark operator to normal form");
  canon->add_option("file", canon_file, "operator JSON")->required();
  canon->add_option("--tol", canon_tol, "residual tolerance");
  canon->add_option("--json-out", canon_json, "write the normal form as JSON");

  // flow
  FlowArgs fa;
  double fa_beta = 0.0, fa_mu = 0.0, fa_kappa = 0.0;
  auto* flow = app.add_subcommand("flow", "integrate the reduced structure system");
  auto* ob = flow->add_option("--beta", fa_beta, "seed beta (> 0)");
  auto* om = flow->add_option("--mu", fa_mu, "seed mu (>= 0)");
  auto* ok = flow->add_option("--kappa", fa_kappa, "seed kappa");
  auto* oc = flow->add_option("--c", fa.c, "seed first integral C");
  auto* od = flow->add_option("--d", fa.d, "seed first integral D");
  flow->add_option("--v", fa.v, "seed v (> 0)");
  flow->add_option("--x-min", fa.cfg.x_min);
  flow->add_option("--x-max", fa.cfg.x_max);
  flow->add_option("--y-min", fa.cfg.y_min);
  flow->add_option("--y-max", fa.cfg.y_max);
  flow->add_option("--step", fa.cfg.step, "node spacing");
  flow->add_flag(
      "--lenient", [&fa](size_t) { fa.cfg.strict = false; },
      "mark nodes invalid instead of failing when leaving the valid region");
  flow->add_option("--csv", fa.csv, "write the flow table as CSV");

  // construct
  std::string construct_cfg;
  bool construct_quiet = false;
  auto* construct = app.add_subcommand("construct", "run the full construction pipeline");
  construct->add_option("--config", construct_cfg, "pipeline config JSON")->required();
  construct->add_flag("--quiet", construct_quiet, "suppress the report on stdout");

  // helix
  double hx_beta = 0.0, hx_mu = 0.0, hx_kappa = 0.0, hx_ratio_tol = 1e-8;
  long long hx_max_den = 64;
  std::string hx_json;
  auto* helix = app.add_subcommand("helix", "characteristic helix spectrum and closure");
  helix->add_option("--beta", hx_beta)->required();
  helix->add_option("--mu", hx_mu)->required();
  helix->add_option("--kappa", hx_kappa)->required();
  helix->add_option("--max-den", hx_max_den, "largest closure denominator tried");
  helix->add_option("--ratio-tol", hx_ratio_tol, "commensurability tolerance");
  helix->add_option("--json-out", hx_json, "write the closure data as JSON");

  // verify
  std::string verify_dir = "acceptance_tmp";
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--work-dir", verify_dir, "scratch directory for file round trips");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      if (theta_opt->count() > 0) check_theta = theta_val;
      return cmd_check(check_file, check_tol, check_theta, check_tilde, check_json);
    }
    if (*canon) return cmd_canon(canon_file, canon_tol, canon_json);
    if (*flow) {
      if (ob->count() || om->count() || ok->count()) {
        if (ob->count()) fa.beta = fa_beta;
        if (om->count()) fa.mu = fa_mu;
        if (ok->count()) fa.kappa = fa_kappa;
      }
      fa.have_cd = oc->count() > 0 || od->count() > 0;
      return cmd_flow(fa);
    }
    if (*construct) return cmd_construct(construct_cfg, construct_quiet);
    if (*helix) return cmd_helix(hx_beta, hx_mu, hx_kappa, hx_max_den, hx_ratio_tol, hx_json);
    if (*verify) return cmd_verify(verify_dir);
  } catch (const stark::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
