#pragma once

#include "stark/surface.hpp"

namespace stark {

// Frenet matrix of the characteristic helix through a point with the given
// structure scalars: K = [[0, -1, 0], [1, i kappa, -mu], [0, mu, i beta]].
// The helix frame obeys dF/ds = F K, solved exactly as F(s) = F(0) exp(s K).
CMat3 k_matrix(const FrameScalars& fs);

// Eigenvalue angles of the traceless part of K, ascending: the nu solving
// nu^3 - a_lin nu - b_const = 0 with the coefficients of cubic_coeffs.
std::array<double, 3> helix_spectrum(const FrameScalars& fs, double tol = kDefaultTol);

struct ClosureResult {
  bool closed = false;
  bool degenerate = false;  // all angles coincide; the curve is a point
  double length = 0.0;      // smallest projective period when closed
  long long n1 = 0, n2 = 0;  // commensurability fraction of the angle gaps
};

// Projective closure test: F(s + L) = e^{i theta} F(s) for some L iff the
// pairwise differences of the nu are commensurate.  The gap ratio is matched
// against continued-fraction convergents with denominator <= max_den and
// error <= ratio_tol.
ClosureResult closure_from_spectrum(std::array<double, 3> nu, long long max_den = 64,
                                    double ratio_tol = 1e-8);

std::vector<CMat3> frenet_integrate(const CMat3& f0, const FrameScalars& fs,
                                    const std::vector<double>& s_samples);

struct HelixSpec {
  FrameScalars fs;
  CMat3 k;
  std::array<double, 3> nu;
  ClosureResult closure;
};

HelixSpec make_helix_spec(const FrameScalars& fs, long long max_den = 64,
                          double ratio_tol = 1e-8);

// Frobenius distance between frames modulo a global phase.
double phase_distance(const CMat3& f0, const CMat3& f1);

// Deterministic representative of a point of complex projective space:
// unit norm, largest-modulus entry real positive (ties broken by lowest
// index).
CVec3 gauge_fix(const CVec3& z);

struct PointRow {
  double x, y, s;
  CVec3 z;
};
using PointCloud = std::vector<PointRow>;

// Sample the helices through every grid node at the given arc parameters.
// Rows are node-major (x outer, y inner) with s innermost.
PointCloud sweep(const SurfaceGrid& grid, const std::vector<double>& s_samples);

}  // namespace stark
