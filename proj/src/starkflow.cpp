#include "stark/starkflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stark {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

template <size_t N, typename Rhs>
std::array<double, N> rk4_step(const std::array<double, N>& y, double h, Rhs&& f) {
  auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
    std::array<double, N> r;
    for (size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const std::array<double, N> k1 = f(y);
  const std::array<double, N> k2 = f(axpy(y, 0.5 * h, k1));
  const std::array<double, N> k3 = f(axpy(y, 0.5 * h, k2));
  const std::array<double, N> k4 = f(axpy(y, h, k3));
  std::array<double, N> out;
  for (size_t i = 0; i < N; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace

ReducedState to_reduced(const FrameScalars& fs) {
  if (!(fs.beta > 0.0)) {
    throw OutsideCanonicalPatch("to_reduced requires beta > 0, got " + std::to_string(fs.beta));
  }
  if (fs.mu < 0.0) {
    throw OutsideCanonicalPatch("to_reduced requires mu >= 0, got " + std::to_string(fs.mu));
  }
  ReducedState st;
  st.t = fs.kappa / fs.beta;
  st.u = std::cbrt((fs.mu / fs.beta) * (fs.mu / fs.beta));
  st.v = std::cbrt(fs.beta * fs.beta);
  return st;
}

FrameScalars from_reduced(const ReducedState& st) {
  if (!(st.v > 0.0)) {
    throw OutsideCanonicalPatch("from_reduced requires v > 0, got " + std::to_string(st.v));
  }
  if (st.u < 0.0) {
    throw UDegenerate("from_reduced requires u >= 0, got " + std::to_string(st.u));
  }
  FrameScalars fs;
  fs.beta = std::pow(st.v, 1.5);
  fs.mu = std::pow(st.u * st.v, 1.5);
  fs.kappa = st.t * fs.beta;
  return fs;
}

FirstIntegrals first_integrals(const ReducedState& st) {
  FirstIntegrals fi;
  fi.c = ((st.t - st.u * st.u * st.u) * st.v * st.v - 1.0 / st.v) / 3.0;
  fi.d = st.v * (st.t + 1.0) / 3.0;
  return fi;
}

ReducedState recover_state(const FirstIntegrals& fi, double v) {
  if (!(v > 0.0)) {
    throw OutsideCanonicalPatch("recover_state requires v > 0, got " + std::to_string(v));
  }
  const double t = 3.0 * fi.d / v - 1.0;
  const double rest = (3.0 * fi.c * v + 1.0) / (v * v * v);
  double u3 = t - rest;
  const double scale = std::max({1.0, std::abs(t), std::abs(rest)});
  if (u3 < -1e-12 * scale) {
    throw UDegenerate("recover_state: implied u^3 = " + std::to_string(u3) + " is negative");
  }
  u3 = std::max(0.0, u3);
  return ReducedState{t, std::cbrt(u3), v};
}

CdRates cd_rhs(const FirstIntegrals& fi) {
  return CdRates{4.0 * (fi.c * fi.c + fi.d), 2.0 * (fi.c * fi.d + 1.0)};
}

double v_rhs_x(double c, double v) { return 2.0 * (c * v + 1.0); }

TuvRates tuv_rhs_x(const ReducedState& st) {
  if (!(st.v > 0.0)) {
    throw OutsideCanonicalPatch("tuv_rhs_x requires v > 0, got " + std::to_string(st.v));
  }
  const double u3 = st.u * st.u * st.u;
  TuvRates r;
  r.dt = 2.0 * (2.0 - st.t) / st.v;
  r.du = -2.0 * st.u / st.v;
  r.dv = (2.0 / 3.0) * (st.v * st.v * st.v * (st.t - u3) + 2.0);
  return r;
}

TuvRates tuv_rhs_y(const ReducedState& st) {
  if (!(st.v > 0.0)) {
    throw OutsideCanonicalPatch("tuv_rhs_y requires v > 0, got " + std::to_string(st.v));
  }
  if (!(st.u > 0.0)) {
    throw UDegenerate("tuv_rhs_y requires u > 0, got " + std::to_string(st.u));
  }
  const double u3 = st.u * st.u * st.u;
  const double v3 = st.v * st.v * st.v;
  TuvRates r;
  r.dt = -2.0 * st.u * (st.t + 1.0);
  r.du = (2.0 / (3.0 * st.u)) * (st.t + 1.0 / v3 - 2.0 * u3 - 1.0);
  r.dv = 2.0 * st.u * st.v;
  return r;
}

TuvRhs tuv_rhs(const ReducedState& st) { return TuvRhs{tuv_rhs_x(st), tuv_rhs_y(st)}; }

HelixCubic cubic_coeffs(const FrameScalars& fs) {
  const double b = fs.beta, m = fs.mu, k = fs.kappa;
  HelixCubic hc;
  hc.a_lin = m * m + (b * b - b * k + k * k) / 3.0 + 1.0;
  hc.b_const = (2.0 * b * b * b - 3.0 * b * b * k - 3.0 * b * k * k + 2.0 * k * k * k) / 27.0 +
               (m * m * (b + k) + k - 2.0 * b) / 3.0;
  return hc;
}

double invariant_ratio(const FrameScalars& fs) {
  const HelixCubic hc = cubic_coeffs(fs);
  const double a3 = hc.a_lin * hc.a_lin * hc.a_lin;
  if (std::abs(hc.b_const) < 1e-300) throw BZero(a3, hc.b_const);
  return a3 / (hc.b_const * hc.b_const);
}

CdIdentityValues derived_cd_identities(const ReducedState& st) {
  const FirstIntegrals fi = first_integrals(st);
  CdIdentityValues out;
  out.a_from_cd = 3.0 * st.v * (fi.d * fi.d - fi.c);
  out.b_from_cd = std::pow(st.v, 1.5) *
                  (2.0 * fi.d * fi.d * fi.d - 3.0 * fi.c * fi.d - 1.0);
  return out;
}

namespace {

struct AxisPlan {
  long long m = 0;   // node step count
  double h = 0.0;    // node step actually used
};

AxisPlan plan_axis(double lo, double hi, double step, const char* name) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw StepUnderflow(std::string(name) + " step must be positive, got " + std::to_string(step));
  }
  const double span = hi - lo;
  if (span < 0.0 || !std::isfinite(span)) {
    throw StepUnderflow(std::string(name) + " range is empty or non-finite");
  }
  AxisPlan plan;
  if (span == 0.0) return plan;
  plan.m = std::llround(span / step);
  if (plan.m < 1) plan.m = 1;
  if (plan.m > 20'000'000LL) {
    throw StepUnderflow(std::string(name) + " step implies " + std::to_string(plan.m) +
                        " nodes; refusing");
  }
  plan.h = span / static_cast<double>(plan.m);
  return plan;
}

}  // namespace

FlowResult integrate_flow(const FlowConfig& cfg) {
  if (!(cfg.v0 > 0.0)) {
    throw OutsideCanonicalPatch("integrate_flow requires v0 > 0, got " + std::to_string(cfg.v0));
  }
  const AxisPlan ax = plan_axis(cfg.x_min, cfg.x_max, cfg.step, "x");
  const AxisPlan ay = plan_axis(cfg.y_min, cfg.y_max, cfg.step, "y");

  FlowResult res;
  res.nx = static_cast<int>(ax.m) + 1;
  res.ny = static_cast<int>(ay.m) + 1;
  res.nxh = 2 * static_cast<int>(ax.m) + 1;
  res.nyh = 2 * static_cast<int>(ay.m) + 1;
  res.xs.resize(static_cast<size_t>(res.nx));
  res.ys.resize(static_cast<size_t>(res.ny));
  for (int i = 0; i < res.nx; ++i) res.xs[static_cast<size_t>(i)] = cfg.x_min + ax.h * i;
  for (int j = 0; j < res.ny; ++j) res.ys[static_cast<size_t>(j)] = cfg.y_min + ay.h * j;

  // x-axis pass: (C, D, v) at half steps.
  res.c_axis.resize(static_cast<size_t>(res.nxh));
  res.d_axis.resize(static_cast<size_t>(res.nxh));
  res.v_axis.resize(static_cast<size_t>(res.nxh));
  {
    std::array<double, 3> s{cfg.c0, cfg.d0, cfg.v0};
    const auto rhs = [](const std::array<double, 3>& y) {
      const CdRates r = cd_rhs(FirstIntegrals{y[0], y[1]});
      return std::array<double, 3>{r.dc, r.dd, v_rhs_x(y[0], y[2])};
    };
    for (int ih = 0; ih < res.nxh; ++ih) {
      res.c_axis[static_cast<size_t>(ih)] = s[0];
      res.d_axis[static_cast<size_t>(ih)] = s[1];
      res.v_axis[static_cast<size_t>(ih)] = s[2];
      if (ih + 1 < res.nxh) s = rk4_step(s, ax.h / 2.0, rhs);
    }
  }

  const size_t cells = static_cast<size_t>(res.nxh) * static_cast<size_t>(res.nyh);
  res.states.assign(cells, ReducedState{kNan, kNan, kNan});
  res.valid.assign(cells, 0);

  // Recover the state at each x half-node, then push columns along y.
  std::vector<ReducedState> col_seed(static_cast<size_t>(res.nxh));
  std::vector<char> col_ok(static_cast<size_t>(res.nxh), 0);
  for (int ih = 0; ih < res.nxh; ++ih) {
    const double x = cfg.x_min + ax.h / 2.0 * ih;
    try {
      col_seed[static_cast<size_t>(ih)] =
          recover_state(FirstIntegrals{res.c_axis[static_cast<size_t>(ih)],
                                       res.d_axis[static_cast<size_t>(ih)]},
                        res.v_axis[static_cast<size_t>(ih)]);
      col_ok[static_cast<size_t>(ih)] = 1;
    } catch (const Error& e) {
      if (cfg.strict) throw OutsideValidRegion(std::string("flow recovery failed: ") + e.what(), x, cfg.y_min);
      if (ih == 0) res.cd_only = true;
    }
  }
  if (res.cd_only) return res;

  const auto yrhs = [](const std::array<double, 3>& y) {
    const TuvRates r = tuv_rhs_y(ReducedState{y[0], y[1], y[2]});
    return std::array<double, 3>{r.dt, r.du, r.dv};
  };
  for (int ih = 0; ih < res.nxh; ++ih) {
    if (!col_ok[static_cast<size_t>(ih)]) continue;
    const double x = cfg.x_min + ax.h / 2.0 * ih;
    std::array<double, 3> s{col_seed[static_cast<size_t>(ih)].t, col_seed[static_cast<size_t>(ih)].u,
                            col_seed[static_cast<size_t>(ih)].v};
    for (int jh = 0; jh < res.nyh; ++jh) {
      const double y = cfg.y_min + ay.h / 2.0 * jh;
      const size_t idx = static_cast<size_t>(ih) * res.nyh + static_cast<size_t>(jh);
      const bool finite = std::isfinite(s[0]) && std::isfinite(s[1]) && std::isfinite(s[2]);
      if (!finite || s[2] <= 0.0 || (res.nyh > 1 && s[1] <= cfg.u_floor)) {
        if (cfg.strict) {
          throw OutsideValidRegion("flow left the valid region (u or v degenerate)", x, y);
        }
        break;  // leave the rest of the column invalid
      }
      res.states[idx] = ReducedState{s[0], s[1], s[2]};
      res.valid[idx] = 1;
      if (jh + 1 < res.nyh) {
        try {
          s = rk4_step(s, ay.h / 2.0, yrhs);
        } catch (const Error& e) {
          if (cfg.strict) {
            throw OutsideValidRegion(std::string("flow step failed: ") + e.what(), x, y);
          }
          s = {kNan, kNan, kNan};
        }
      }
    }
  }

  // Drift diagnostics across the valid part of the lattice.
  res.seed_ratio = kNan;
  try {
    res.seed_ratio = invariant_ratio(from_reduced(col_seed[0]));
  } catch (const Error&) {
  }
  res.max_fi_drift = 0.0;
  res.max_ratio_drift = std::isfinite(res.seed_ratio) ? 0.0 : kNan;
  for (int ih = 0; ih < res.nxh; ++ih) {
    for (int jh = 0; jh < res.nyh; ++jh) {
      if (!res.valid_half(ih, jh)) continue;
      const ReducedState& st = res.state_half(ih, jh);
      const FirstIntegrals fi = first_integrals(st);
      res.max_fi_drift = std::max({res.max_fi_drift,
                                   std::abs(fi.c - res.c_axis[static_cast<size_t>(ih)]),
                                   std::abs(fi.d - res.d_axis[static_cast<size_t>(ih)])});
      if (std::isfinite(res.seed_ratio)) {
        try {
          const double ratio = invariant_ratio(from_reduced(st));
          res.max_ratio_drift =
              std::max(res.max_ratio_drift,
                       std::abs(ratio - res.seed_ratio) / std::max(1.0, std::abs(res.seed_ratio)));
        } catch (const Error&) {
        }
      }
    }
  }
  return res;
}

}  // namespace stark
