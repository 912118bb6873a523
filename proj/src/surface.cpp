#include "stark/surface.hpp"

#include <algorithm>
#include <cmath>

namespace stark {

CoframeAtPoint coframe_from_xy(const FrameScalars& fs) {
  if (!(fs.beta > 0.0)) {
    throw OutsideCanonicalPatch("coframe requires beta > 0, got " + std::to_string(fs.beta));
  }
  if (!(fs.mu > 0.0)) {
    throw MuZero("coframe requires mu > 0, got " + std::to_string(fs.mu));
  }
  const double b13 = std::cbrt(fs.beta);
  const double m13 = std::cbrt(fs.mu);
  CoframeAtPoint cf;
  cf.omega_from_dxdy(0, 0) = b13;
  cf.omega_from_dxdy(0, 1) = 0.0;
  cf.omega_from_dxdy(1, 0) = -fs.mu / (b13 * b13);
  cf.omega_from_dxdy(1, 1) = 1.0 / (b13 * b13 * m13);
  return cf;
}

CMat3 mc_matrix(const FrameScalars& fs, const std::array<double, 3>& w) {
  const double w1 = w[0], w2 = w[1], w3 = w[2];
  CMat3 o;
  o(0, 0) = Complex(0.0, 0.0);
  o(1, 0) = Complex(w1, w2);
  o(2, 0) = Complex(w3, 0.0);
  o(1, 1) = Complex(0.0, fs.kappa * w1);
  o(2, 1) = Complex(fs.mu * w1, fs.mu * w2 + fs.beta * w3);
  o(2, 2) = Complex(0.0, fs.beta * w1);
  o(0, 1) = -std::conj(o(1, 0));
  o(0, 2) = -std::conj(o(2, 0));
  o(1, 2) = -std::conj(o(2, 1));
  return o;
}

std::array<double, 3> transport_w_x(const FrameScalars& fs) {
  const CoframeAtPoint cf = coframe_from_xy(fs);
  return {0.0, cf.omega_from_dxdy(0, 0), cf.omega_from_dxdy(1, 0)};
}

std::array<double, 3> transport_w_y(const FrameScalars& fs) {
  const CoframeAtPoint cf = coframe_from_xy(fs);
  return {0.0, cf.omega_from_dxdy(0, 1), cf.omega_from_dxdy(1, 1)};
}

PdeRates pde_rhs(const FrameScalars& fs, CoframeDirection dir) {
  const double b = fs.beta, m = fs.mu, k = fs.kappa;
  if (dir == CoframeDirection::Omega2) {
    return PdeRates{b * k + 2.0 * m * m + 2.0, m * (2.0 * k - b), k * k - 2.0 * m * m + 4.0};
  }
  return PdeRates{3.0 * b * m, m * m + b * k - b * b + 1.0, m * (k - 2.0 * b)};
}

double SurfaceGrid::max_residual() const {
  double worst = 0.0;
  for (double r : residual) worst = std::max(worst, r);
  return worst;
}

namespace {

// One midpoint-exponential transport step; keeps the frame unitary.
CMat3 transport_step(const CMat3& f, const FrameScalars& mid, const std::array<double, 3>& w,
                     double h) {
  CMat3 next = f * skew_hermitian_exp(mc_matrix(mid, w), h);
  const double drift = (next.adjoint() * next - CMat3::Identity()).cwiseAbs().maxCoeff();
  if (drift > 1e-9) {
    const CMat3 fixed = polar_unitary(next);
    const double correction = (fixed - next).cwiseAbs().maxCoeff();
    if (correction > 1e-6) {
      throw NonUnitaryDrift("frame transport lost unitarity; correction " +
                            std::to_string(correction));
    }
    next = fixed;
  }
  return next;
}

}  // namespace

SurfaceGrid integrate_surface_frames(const FlowResult& flow, const CMat3& f0, double tol) {
  (void)tol;
  if (flow.cd_only) {
    throw OutsideValidRegion("flow carries no recovered states", flow.xs.empty() ? 0.0 : flow.xs[0],
                             flow.ys.empty() ? 0.0 : flow.ys[0]);
  }
  for (int ih = 0; ih < flow.nxh; ++ih) {
    for (int jh = 0; jh < flow.nyh; ++jh) {
      if (!flow.valid_half(ih, jh)) {
        throw OutsideValidRegion("flow lattice is not valid everywhere",
                                 flow.xs[static_cast<size_t>(ih / 2)],
                                 flow.ys[static_cast<size_t>(jh / 2)]);
      }
    }
  }
  if ((f0.adjoint() * f0 - CMat3::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
    throw NonUnitaryDrift("initial frame is not unitary");
  }

  SurfaceGrid grid;
  grid.xs = flow.xs;
  grid.ys = flow.ys;
  grid.nx = flow.nx;
  grid.ny = flow.ny;
  const size_t cells = static_cast<size_t>(grid.nx) * static_cast<size_t>(grid.ny);
  grid.scalars.resize(cells);
  grid.frames.resize(cells);
  grid.residual.assign(cells, 0.0);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      grid.scalars[static_cast<size_t>(i) * grid.ny + j] = from_reduced(flow.state_node(i, j));
    }
  }

  const double hx = grid.nx > 1 ? grid.xs[1] - grid.xs[0] : 0.0;
  const double hy = grid.ny > 1 ? grid.ys[1] - grid.ys[0] : 0.0;
  auto mid_x = [&](int i, int j) { return from_reduced(flow.state_half(2 * i + 1, 2 * j)); };
  auto mid_y = [&](int i, int j) { return from_reduced(flow.state_half(2 * i, 2 * j + 1)); };

  // Column-first sweep (canonical): up the x_min column, then along rows.
  std::vector<CMat3> colfirst(cells);
  colfirst[0] = f0;
  for (int j = 1; j < grid.ny; ++j) {
    const FrameScalars mid = mid_y(0, j - 1);
    colfirst[static_cast<size_t>(j)] =
        transport_step(colfirst[static_cast<size_t>(j - 1)], mid, transport_w_y(mid), hy);
  }
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 1; i < grid.nx; ++i) {
      const FrameScalars mid = mid_x(i - 1, j);
      colfirst[static_cast<size_t>(i) * grid.ny + j] = transport_step(
          colfirst[static_cast<size_t>(i - 1) * grid.ny + j], mid, transport_w_x(mid), hx);
    }
  }

  // Row-first sweep: along the y_min row, then up columns.
  std::vector<CMat3> rowfirst(cells);
  rowfirst[0] = f0;
  for (int i = 1; i < grid.nx; ++i) {
    const FrameScalars mid = mid_x(i - 1, 0);
    rowfirst[static_cast<size_t>(i) * grid.ny] = transport_step(
        rowfirst[static_cast<size_t>(i - 1) * grid.ny], mid, transport_w_x(mid), hx);
  }
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 1; j < grid.ny; ++j) {
      const FrameScalars mid = mid_y(i, j - 1);
      rowfirst[static_cast<size_t>(i) * grid.ny + j] = transport_step(
          rowfirst[static_cast<size_t>(i) * grid.ny + j - 1], mid, transport_w_y(mid), hy);
    }
  }

  grid.frames = colfirst;
  for (size_t idx = 0; idx < cells; ++idx) {
    grid.residual[idx] = (colfirst[idx] - rowfirst[idx]).norm();
  }
  return grid;
}

double max_real_plane_defect(const SurfaceGrid& grid, const CMat3& f0) {
  CMat3 u;
  u.col(0) = f0.col(0);
  u.col(1) = Complex(0.0, 1.0) * f0.col(1);
  u.col(2) = f0.col(2);
  double worst = 0.0;
  for (const CMat3& f : grid.frames) {
    CMat3 trip;
    trip.col(0) = f.col(0);
    trip.col(1) = Complex(0.0, 1.0) * f.col(1);
    trip.col(2) = f.col(2);
    const CMat3 v = u.adjoint() * trip;
    worst = std::max(worst, v.imag().cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace stark
