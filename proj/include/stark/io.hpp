#pragma once

#include <json.hpp>
#include <string>

#include "stark/austere.hpp"
#include "stark/canonform.hpp"
#include "stark/helix.hpp"

namespace stark {

// Shape-operator JSON format:
//   { "n": 2,
//     "basis": "standard"            (or {"split": [k, l]}),
//     "entries": [[...], ...] }      ((2n+1) x (2n+1) row-major)
// Entries are symmetrized; asymmetry above 1e-9 is reported on stderr.
ShapeOperatorRep shape_operator_from_json(const nlohmann::json& j);
ShapeOperatorRep load_shape_operator(const std::string& path);

// Shortest exact decimal rendering used by every CSV/JSON writer.
std::string fmt_full(double v);

// Columns: x,y,t,u,v,beta,mu,kappa,C,D,ratio.  Invalid nodes carry the
// axis-level C,D,v values where available and nan elsewhere.
void write_flow_csv(const std::string& path, const FlowResult& flow);

// Columns: x,y,f00_re,f00_im,...,f22_re,f22_im,residual (frame row-major).
void write_grid_csv(const std::string& path, const SurfaceGrid& grid);

// Columns: x,y,s,z0_re,z0_im,z1_re,z1_im,z2_re,z2_im.
void write_points_csv(const std::string& path, const PointCloud& cloud);

nlohmann::json matrix_to_json(const Mat& m);
nlohmann::json canonical_to_json(const CanonicalForm& cf);
nlohmann::json stark_report_to_json(const StarkReport& sr);
nlohmann::json closure_to_json(const HelixSpec& spec, long long max_den, double ratio_tol);

}  // namespace stark
