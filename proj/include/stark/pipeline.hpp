#pragma once

#include "stark/io.hpp"

namespace stark {

// End-to-end construction: seed scalars -> reduced flow -> frame transport
// -> helix sweep -> point cloud + report.
struct ConstructConfig {
  bool has_scalars0 = false;
  FrameScalars scalars0{1.0, 1.0, 1.0};
  // Seed in first-integral coordinates, used when has_scalars0 is false.
  // Defaults correspond to scalars (beta, mu, kappa) = (1, 1, 1).
  double c0 = -1.0 / 3.0;
  double d0 = 2.0 / 3.0;
  double v0 = 1.0;
  double x_min = 0.0, x_max = 0.05;
  double y_min = 0.0, y_max = 0.05;
  double step = 2.5e-3;
  double s_min = 0.0, s_max = 6.3, s_step = 0.1;
  double tol = kDefaultTol;
  long long max_den = 64;
  double ratio_tol = 1e-8;
  std::string points_csv;
  std::string report_json;
  std::string grid_csv;
};

ConstructConfig construct_config_from_json(const nlohmann::json& j);

struct ConstructOutput {
  FlowResult flow;
  SurfaceGrid grid;
  PointCloud points;
  nlohmann::json report;
};

ConstructOutput run_construct(const ConstructConfig& cfg);

}  // namespace stark
