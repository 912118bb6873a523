#pragma once

#include <array>

#include "stark/starkflow.hpp"

namespace stark {

// Closed coordinate pair (x, y) adapted to the structure system:
//   dx = beta^(-1/3) omega^2,
//   dy = beta^(-1/3) mu^(4/3) omega^2 + beta^(2/3) mu^(1/3) omega^3.
// omega_from_dxdy carries (omega^2, omega^3) on rows against (dx, dy):
//   omega^2 = beta^(1/3) dx,
//   omega^3 = (dy - mu^(4/3) dx) / (beta^(2/3) mu^(1/3)).
struct CoframeAtPoint {
  Eigen::Matrix2d omega_from_dxdy;
  Eigen::Matrix2d dxdy_from_omega() const { return omega_from_dxdy.inverse(); }
};

// Throws OutsideCanonicalPatch for beta <= 0 and MuZero for mu <= 0 (the y
// coordinate degenerates with mu).
CoframeAtPoint coframe_from_xy(const FrameScalars& fs);

// Maurer-Cartan matrix of the adapted frame (X, E1, E3) for a tangent
// direction with coframe values w = (omega^1, omega^2, omega^3)(direction):
//   dF = F * Omega(w).
// Omega((1,0,0)) is exactly the helix matrix K.
CMat3 mc_matrix(const FrameScalars& fs, const std::array<double, 3>& w);

// Coframe values of the coordinate directions on the surface (omega^1 = 0).
std::array<double, 3> transport_w_x(const FrameScalars& fs);
std::array<double, 3> transport_w_y(const FrameScalars& fs);

enum class CoframeDirection { Omega2, Omega3 };

struct PdeRates {
  double dbeta;
  double dmu;
  double dkappa;
};

// Structure equations for the scalars as derivatives along the coframe
// directions omega^2 and omega^3.
PdeRates pde_rhs(const FrameScalars& fs, CoframeDirection dir);

struct SurfaceGrid {
  std::vector<double> xs, ys;
  int nx = 0, ny = 0;
  std::vector<FrameScalars> scalars;  // node-major, x-major
  std::vector<CMat3> frames;          // canonical (column-first) sweep
  std::vector<double> residual;       // vs the row-first sweep, per node

  const FrameScalars& scalar(int i, int j) const { return scalars[static_cast<size_t>(i) * ny + j]; }
  const CMat3& frame(int i, int j) const { return frames[static_cast<size_t>(i) * ny + j]; }
  double residual_at(int i, int j) const { return residual[static_cast<size_t>(i) * ny + j]; }
  double max_residual() const;
};

// Transport the initial unitary frame f0 over the flow lattice with the
// midpoint exponential rule.  The flatness of the connection makes the
// column-first and row-first sweeps agree up to discretization; the
// per-node disagreement is recorded as the residual.
SurfaceGrid integrate_surface_frames(const FlowResult& flow, const CMat3& f0,
                                     double tol = kDefaultTol);

// Worst imaginary part of U^dagger [X, i E1, E3] over the grid, where U is
// the same triple at f0.  For an exact solution this triple moves by a real
// rotation, so the defect measures only discretization error.
double max_real_plane_defect(const SurfaceGrid& grid, const CMat3& f0);

}  // namespace stark
