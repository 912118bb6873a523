#include "stark/pipeline.hpp"

#include <cmath>
#include <fstream>

namespace stark {

using nlohmann::json;

ConstructConfig construct_config_from_json(const json& j) {
  ConstructConfig cfg;
  try {
    if (j.contains("seed")) {
      const json& s = j["seed"];
      if (s.contains("beta") || s.contains("mu") || s.contains("kappa")) {
        cfg.has_scalars0 = true;
        cfg.scalars0.beta = s.value("beta", 1.0);
        cfg.scalars0.mu = s.value("mu", 1.0);
        cfg.scalars0.kappa = s.value("kappa", 1.0);
      } else {
        cfg.c0 = s.value("c", cfg.c0);
        cfg.d0 = s.value("d", cfg.d0);
        cfg.v0 = s.value("v", cfg.v0);
      }
    }
    if (j.contains("domain")) {
      const json& d = j["domain"];
      cfg.x_min = d.value("x_min", cfg.x_min);
      cfg.x_max = d.value("x_max", cfg.x_max);
      cfg.y_min = d.value("y_min", cfg.y_min);
      cfg.y_max = d.value("y_max", cfg.y_max);
      cfg.step = d.value("step", cfg.step);
    }
    if (j.contains("arc")) {
      const json& a = j["arc"];
      cfg.s_min = a.value("s_min", cfg.s_min);
      cfg.s_max = a.value("s_max", cfg.s_max);
      cfg.s_step = a.value("s_step", cfg.s_step);
    }
    if (j.contains("closure")) {
      const json& c = j["closure"];
      cfg.max_den = c.value("max_den", cfg.max_den);
      cfg.ratio_tol = c.value("ratio_tol", cfg.ratio_tol);
    }
    if (j.contains("outputs")) {
      const json& o = j["outputs"];
      cfg.points_csv = o.value("points_csv", cfg.points_csv);
      cfg.report_json = o.value("report_json", cfg.report_json);
      cfg.grid_csv = o.value("grid_csv", cfg.grid_csv);
    }
    cfg.tol = j.value("tol", cfg.tol);
  } catch (const json::exception& e) {
    throw ParseError(std::string("construct config: ") + e.what());
  }
  return cfg;
}

namespace {

std::vector<double> arc_samples(double s_min, double s_max, double s_step) {
  if (!(s_step > 0.0) || !std::isfinite(s_step)) {
    throw StepUnderflow("arc step must be positive, got " + std::to_string(s_step));
  }
  const double span = s_max - s_min;
  if (span < 0.0) throw StepUnderflow("arc range is empty");
  long long m = std::llround(span / s_step);
  if (span > 0.0 && m < 1) m = 1;
  if (m > 2'000'000LL) throw StepUnderflow("arc step implies too many samples");
  const double h = m > 0 ? span / static_cast<double>(m) : 0.0;
  std::vector<double> out(static_cast<size_t>(m) + 1);
  for (long long i = 0; i <= m; ++i) out[static_cast<size_t>(i)] = s_min + h * static_cast<double>(i);
  return out;
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return json(v);
  return json();
}

}  // namespace

ConstructOutput run_construct(const ConstructConfig& cfg) {
  ConstructOutput out;

  double c0 = cfg.c0, d0 = cfg.d0, v0 = cfg.v0;
  if (cfg.has_scalars0) {
    const ReducedState st0 = to_reduced(cfg.scalars0);
    const FirstIntegrals fi0 = first_integrals(st0);
    c0 = fi0.c;
    d0 = fi0.d;
    v0 = st0.v;
  }

  FlowConfig fc;
  fc.c0 = c0;
  fc.d0 = d0;
  fc.v0 = v0;
  fc.x_min = cfg.x_min;
  fc.x_max = cfg.x_max;
  fc.y_min = cfg.y_min;
  fc.y_max = cfg.y_max;
  fc.step = cfg.step;
  fc.strict = true;
  out.flow = integrate_flow(fc);

  out.grid = integrate_surface_frames(out.flow, CMat3::Identity(), cfg.tol);

  const std::vector<double> samples = arc_samples(cfg.s_min, cfg.s_max, cfg.s_step);
  out.points = sweep(out.grid, samples);

  // Closure bookkeeping across the grid.
  long long closed_count = 0, open_count = 0, degenerate_count = 0;
  json node_samples = json::array();
  const long long total = static_cast<long long>(out.grid.nx) * out.grid.ny;
  const long long stride = std::max(1LL, total / 25);
  long long flat = 0;
  for (int i = 0; i < out.grid.nx; ++i) {
    for (int j = 0; j < out.grid.ny; ++j, ++flat) {
      const HelixSpec spec = make_helix_spec(out.grid.scalar(i, j), cfg.max_den, cfg.ratio_tol);
      if (spec.closure.degenerate) {
        ++degenerate_count;
      } else if (spec.closure.closed) {
        ++closed_count;
      } else {
        ++open_count;
      }
      if (flat % stride == 0 && node_samples.size() < 25) {
        json entry = closure_to_json(spec, cfg.max_den, cfg.ratio_tol);
        entry["x"] = out.grid.xs[static_cast<size_t>(i)];
        entry["y"] = out.grid.ys[static_cast<size_t>(j)];
        node_samples.push_back(entry);
      }
    }
  }

  json rep;
  rep["seed"]["c"] = c0;
  rep["seed"]["d"] = d0;
  rep["seed"]["v"] = v0;
  if (cfg.has_scalars0) {
    rep["seed"]["beta"] = cfg.scalars0.beta;
    rep["seed"]["mu"] = cfg.scalars0.mu;
    rep["seed"]["kappa"] = cfg.scalars0.kappa;
  }
  rep["domain"] = {{"x_min", cfg.x_min}, {"x_max", cfg.x_max},
                   {"y_min", cfg.y_min}, {"y_max", cfg.y_max},
                   {"step", cfg.step}};
  rep["arc"] = {{"s_min", cfg.s_min}, {"s_max", cfg.s_max}, {"s_step", cfg.s_step}};
  rep["grid"] = {{"nx", out.grid.nx}, {"ny", out.grid.ny}, {"points", out.points.size()}};
  rep["drift"]["max_first_integral"] = out.flow.max_fi_drift;
  rep["drift"]["max_ratio_rel"] = finite_or_null(out.flow.max_ratio_drift);
  rep["drift"]["seed_ratio"] = finite_or_null(out.flow.seed_ratio);
  rep["drift"]["max_frame_residual"] = out.grid.max_residual();
  rep["closure"] = {{"closed", closed_count},
                    {"open", open_count},
                    {"degenerate", degenerate_count},
                    {"max_den", cfg.max_den},
                    {"ratio_tol", cfg.ratio_tol},
                    {"samples", node_samples}};
  rep["outputs"] = {{"points_csv", cfg.points_csv},
                    {"report_json", cfg.report_json},
                    {"grid_csv", cfg.grid_csv}};
  out.report = rep;

  if (!cfg.points_csv.empty()) write_points_csv(cfg.points_csv, out.points);
  if (!cfg.grid_csv.empty()) write_grid_csv(cfg.grid_csv, out.grid);
  if (!cfg.report_json.empty()) {
    std::ofstream rj(cfg.report_json);
    if (!rj) throw ParseError("cannot write " + cfg.report_json);
    rj << rep.dump(2) << '\n';
  }
  return out;
}

}  // namespace stark
