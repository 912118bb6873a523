#include "stark/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

namespace stark {

using nlohmann::json;

ShapeOperatorRep shape_operator_from_json(const json& j) {
  try {
    if (!j.contains("n") || !j["n"].is_number_integer()) {
      throw ParseError("shape operator JSON needs an integer \"n\"");
    }
    const int n = j["n"].get<int>();
    if (n < 1) throw ParseError("\"n\" must be >= 1");
    const int side = 2 * n + 1;

    BasisKind kind = BasisKind::Standard;
    int k = 0, l = 0;
    if (j.contains("basis")) {
      const json& b = j["basis"];
      if (b.is_string() && b.get<std::string>() == "standard") {
        kind = BasisKind::Standard;
      } else if (b.is_object() && b.contains("split") && b["split"].is_array() &&
                 b["split"].size() == 2) {
        kind = BasisKind::Split;
        k = b["split"][0].get<int>();
        l = b["split"][1].get<int>();
      } else {
        throw ParseError("\"basis\" must be \"standard\" or {\"split\": [k, l]}");
      }
    }

    if (!j.contains("entries") || !j["entries"].is_array() ||
        static_cast<int>(j["entries"].size()) != side) {
      throw ParseError("\"entries\" must be a " + std::to_string(side) + "-row array");
    }
    Mat a(side, side);
    for (int r = 0; r < side; ++r) {
      const json& row = j["entries"][static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != side) {
        throw ParseError("entries row " + std::to_string(r) + " must have " +
                         std::to_string(side) + " numbers");
      }
      for (int c = 0; c < side; ++c) {
        const json& cell = row[static_cast<size_t>(c)];
        if (!cell.is_number()) {
          throw ParseError("entries[" + std::to_string(r) + "][" + std::to_string(c) +
                           "] is not a number");
        }
        a(r, c) = cell.get<double>();
      }
    }
    ShapeOperatorRep rep(a, kind, k, l);
    if (rep.load_asymmetry() > 1e-9) {
      std::cerr << "warning: shape operator asymmetry " << rep.load_asymmetry()
                << " exceeds 1e-9; symmetrized\n";
    }
    return rep;
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(std::string("shape operator JSON: ") + e.what());
  }
}

ShapeOperatorRep load_shape_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return shape_operator_from_json(j);
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  return out;
}

constexpr double kNanD = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void write_flow_csv(const std::string& path, const FlowResult& flow) {
  std::ofstream out = open_out(path);
  out << "x,y,t,u,v,beta,mu,kappa,C,D,ratio\n";
  for (int i = 0; i < flow.nx; ++i) {
    for (int j = 0; j < flow.ny; ++j) {
      const double x = flow.xs[static_cast<size_t>(i)];
      const double y = flow.ys[static_cast<size_t>(j)];
      double t = kNanD, u = kNanD, v = kNanD, beta = kNanD, mu = kNanD, kappa = kNanD;
      double c = flow.c_axis[static_cast<size_t>(2 * i)];
      double d = flow.d_axis[static_cast<size_t>(2 * i)];
      double ratio = kNanD;
      if (flow.valid_node(i, j)) {
        const ReducedState& st = flow.state_node(i, j);
        t = st.t;
        u = st.u;
        v = st.v;
        const FrameScalars fs = from_reduced(st);
        beta = fs.beta;
        mu = fs.mu;
        kappa = fs.kappa;
        const FirstIntegrals fi = first_integrals(st);
        c = fi.c;
        d = fi.d;
        try {
          ratio = invariant_ratio(fs);
        } catch (const Error&) {
        }
      } else {
        v = flow.v_axis[static_cast<size_t>(2 * i)];
      }
      out << fmt_full(x) << ',' << fmt_full(y) << ',' << fmt_full(t) << ',' << fmt_full(u) << ','
          << fmt_full(v) << ',' << fmt_full(beta) << ',' << fmt_full(mu) << ',' << fmt_full(kappa)
          << ',' << fmt_full(c) << ',' << fmt_full(d) << ',' << fmt_full(ratio) << '\n';
    }
  }
}

void write_grid_csv(const std::string& path, const SurfaceGrid& grid) {
  std::ofstream out = open_out(path);
  out << "x,y";
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out << ",f" << r << c << "_re,f" << r << c << "_im";
    }
  }
  out << ",residual\n";
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      out << fmt_full(grid.xs[static_cast<size_t>(i)]) << ','
          << fmt_full(grid.ys[static_cast<size_t>(j)]);
      const CMat3& f = grid.frame(i, j);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          out << ',' << fmt_full(f(r, c).real()) << ',' << fmt_full(f(r, c).imag());
        }
      }
      out << ',' << fmt_full(grid.residual_at(i, j)) << '\n';
    }
  }
}

void write_points_csv(const std::string& path, const PointCloud& cloud) {
  std::ofstream out = open_out(path);
  out << "x,y,s,z0_re,z0_im,z1_re,z1_im,z2_re,z2_im\n";
  for (const PointRow& row : cloud) {
    out << fmt_full(row.x) << ',' << fmt_full(row.y) << ',' << fmt_full(row.s);
    for (int i = 0; i < 3; ++i) {
      out << ',' << fmt_full(row.z(i).real()) << ',' << fmt_full(row.z(i).imag());
    }
    out << '\n';
  }
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json canonical_to_json(const CanonicalForm& cf) {
  json j;
  j["kind"] = cf.kind == FormKind::Irreducible ? "irreducible" : "reducible";
  j["k"] = cf.k;
  j["l"] = cf.l;
  j["hopf_degenerate"] = cf.hopf_degenerate;
  j["s"] = matrix_to_json(cf.s);
  j["d"] = matrix_to_json(cf.d);
  j["p"] = matrix_to_json(cf.p);
  j["q"] = matrix_to_json(cf.q);
  j["residual"] = cf.residual;
  j["phi_residual"] = cf.phi_residual;
  j["p11_levels"] = cf.p11_levels;
  j["transform"] = matrix_to_json(cf.transform);
  return j;
}

json stark_report_to_json(const StarkReport& sr) {
  json j;
  j["austere"] = sr.austere.ok;
  j["austere_max_violation"] = sr.austere.max_violation;
  j["austere_residuals"] = sr.austere.residuals;
  j["compatible"] = sr.compat_ok;
  j["compat_violation"] = sr.compat_violation;
  j["stark"] = sr.ok;
  return j;
}

json closure_to_json(const HelixSpec& spec, long long max_den, double ratio_tol) {
  json j;
  j["beta"] = spec.fs.beta;
  j["mu"] = spec.fs.mu;
  j["kappa"] = spec.fs.kappa;
  const HelixCubic hc = cubic_coeffs(spec.fs);
  j["a_lin"] = hc.a_lin;
  j["b_const"] = hc.b_const;
  j["nu"] = {spec.nu[0], spec.nu[1], spec.nu[2]};
  j["closed"] = spec.closure.closed;
  j["degenerate"] = spec.closure.degenerate;
  j["length"] = spec.closure.length;
  j["n1"] = spec.closure.n1;
  j["n2"] = spec.closure.n2;
  j["max_den"] = max_den;
  j["ratio_tol"] = ratio_tol;
  return j;
}

}  // namespace stark
