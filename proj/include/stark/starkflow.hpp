#pragma once

#include <vector>

#include "stark/matcore.hpp"

namespace stark {

// Structure scalars of the adapted frame along the surface.
struct FrameScalars {
  double beta;
  double mu;
  double kappa;
};

// Reduced coordinates t = kappa/beta, u = (mu/beta)^(2/3), v = beta^(2/3),
// valid on the patch beta > 0, mu >= 0.
struct ReducedState {
  double t;
  double u;
  double v;
};

// First integrals of the structure system:
//   C = ((t - u^3) v^2 - 1/v) / 3,   D = v (t + 1) / 3.
// Both are constant in the y-direction; along x they obey cd_rhs below.
struct FirstIntegrals {
  double c;
  double d;
};

// Coefficients of the helix cubic nu^3 - a_lin * nu - b_const = 0.
struct HelixCubic {
  double a_lin;
  double b_const;
};

ReducedState to_reduced(const FrameScalars& fs);
FrameScalars from_reduced(const ReducedState& st);
FirstIntegrals first_integrals(const ReducedState& st);

// Rebuild (t, u, v) from (C, D) and v.  Throws UDegenerate when the implied
// u^3 is negative beyond rounding, OutsideCanonicalPatch for v <= 0.
ReducedState recover_state(const FirstIntegrals& fi, double v);

struct CdRates {
  double dc;
  double dd;
};

// Autonomous x-evolution of the first integrals:
//   dC/dx = 4 (C^2 + D),   dD/dx = 2 (C D + 1).
CdRates cd_rhs(const FirstIntegrals& fi);

// dv/dx = 2 (C v + 1); together with cd_rhs this closes the x-system.
double v_rhs_x(double c, double v);

struct TuvRates {
  double dt;
  double du;
  double dv;
};

struct TuvRhs {
  TuvRates x_dir;
  TuvRates y_dir;
};

// Full reduced system.  The y-direction divides by u and throws UDegenerate
// at u <= 0; both directions require v > 0.
TuvRates tuv_rhs_x(const ReducedState& st);
TuvRates tuv_rhs_y(const ReducedState& st);
TuvRhs tuv_rhs(const ReducedState& st);

// a_lin = mu^2 + (beta^2 - beta kappa + kappa^2)/3 + 1  (always >= 1),
// b_const = (2 beta^3 - 3 beta^2 kappa - 3 beta kappa^2 + 2 kappa^3)/27
//           + (mu^2 (beta + kappa) + kappa - 2 beta)/3.
HelixCubic cubic_coeffs(const FrameScalars& fs);

// a_lin^3 / b_const^2, constant on a connected surface; throws BZero when
// b_const vanishes.
double invariant_ratio(const FrameScalars& fs);

struct CdIdentityValues {
  double a_from_cd;  // 3 v (D^2 - C)
  double b_from_cd;  // v^(3/2) (2 D^3 - 3 C D - 1)
};

// The helix cubic expressed through the first integrals; must agree with
// cubic_coeffs(from_reduced(st)) identically.
CdIdentityValues derived_cd_identities(const ReducedState& st);

struct FlowConfig {
  double c0 = 0.0;
  double d0 = 0.0;
  double v0 = 1.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double step = 1e-3;
  bool strict = true;       // throw on leaving the valid region
  double u_floor = 1e-6;    // y-direction degeneracy guard
};

// Grid integration of the reduced system.  The first integrals and v are
// advanced along x (RK4 at half steps for midpoint availability); the state
// is recovered at each x and pushed along y columns with the full system.
struct FlowResult {
  std::vector<double> xs, ys;  // node coordinates
  int nx = 0, ny = 0;          // node counts
  int nxh = 0, nyh = 0;        // half-lattice counts (2m+1)
  std::vector<ReducedState> states;  // half-lattice, x-major
  std::vector<char> valid;
  std::vector<double> c_axis, d_axis, v_axis;  // along x at half nodes
  double max_fi_drift = 0.0;     // worst |C,D drift| across valid nodes
  double max_ratio_drift = 0.0;  // worst relative drift of the cubic ratio
  double seed_ratio = 0.0;
  bool cd_only = false;  // recovery failed at the seed; axis data only

  const ReducedState& state_half(int ih, int jh) const { return states[static_cast<size_t>(ih) * nyh + jh]; }
  bool valid_half(int ih, int jh) const { return valid[static_cast<size_t>(ih) * nyh + jh] != 0; }
  const ReducedState& state_node(int i, int j) const { return state_half(2 * i, 2 * j); }
  bool valid_node(int i, int j) const { return valid_half(2 * i, 2 * j); }
};

FlowResult integrate_flow(const FlowConfig& cfg);

}  // namespace stark
