#include "stark/helix.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace stark {

CMat3 k_matrix(const FrameScalars& fs) {
  CMat3 k = CMat3::Zero();
  k(0, 1) = Complex(-1.0, 0.0);
  k(1, 0) = Complex(1.0, 0.0);
  k(1, 1) = Complex(0.0, fs.kappa);
  k(1, 2) = Complex(-fs.mu, 0.0);
  k(2, 1) = Complex(fs.mu, 0.0);
  k(2, 2) = Complex(0.0, fs.beta);
  return k;
}

std::array<double, 3> helix_spectrum(const FrameScalars& fs, double tol) {
  const HelixCubic hc = cubic_coeffs(fs);
  return real_cubic_roots(-hc.a_lin, -hc.b_const, tol);
}

namespace {

// First continued-fraction convergent of x in [0, 1] with denominator at
// most max_den approximating x within tol.
std::optional<std::pair<long long, long long>> cf_within(double x, long long max_den, double tol) {
  long long p_prev = 1, q_prev = 0;
  long long p = 0, q = 1;  // a0 = floor(x) handled by the first iteration
  double rem = x;
  long long a = static_cast<long long>(std::floor(rem));
  p = a;
  q = 1;
  for (int iter = 0; iter < 64; ++iter) {
    if (q > max_den) return std::nullopt;
    if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
      return std::make_pair(p, q);
    }
    const double frac = rem - std::floor(rem);
    if (frac < 1e-18) return std::nullopt;  // rational exhausted, no match
    rem = 1.0 / frac;
    a = static_cast<long long>(std::floor(rem));
    if (a > max_den + 1) return std::nullopt;  // next denominator overshoots
    const long long pn = a * p + p_prev;
    const long long qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  return std::nullopt;
}

}  // namespace

ClosureResult closure_from_spectrum(std::array<double, 3> nu, long long max_den,
                                    double ratio_tol) {
  std::sort(nu.begin(), nu.end());
  ClosureResult out;
  const double scale = std::max({1.0, std::abs(nu[0]), std::abs(nu[2])});
  const double zero_tol = 1e-12 * scale;
  const double d1 = nu[1] - nu[0];
  const double d2 = nu[2] - nu[1];
  if (d1 <= zero_tol && d2 <= zero_tol) {
    out.closed = true;
    out.degenerate = true;
    return out;
  }
  const double dmin = std::min(d1, d2);
  const double dmax = std::max(d1, d2);
  if (dmin <= zero_tol) {
    out.closed = true;
    out.length = 2.0 * M_PI / dmax;
    out.n1 = 0;
    out.n2 = 1;
    return out;
  }
  const double ratio = dmin / dmax;
  const auto frac = cf_within(ratio, max_den, ratio_tol);
  if (!frac) return out;
  out.closed = true;
  out.n1 = frac->first;
  out.n2 = frac->second;
  out.length = 2.0 * M_PI * static_cast<double>(frac->second) / dmax;
  return out;
}

std::vector<CMat3> frenet_integrate(const CMat3& f0, const FrameScalars& fs,
                                    const std::vector<double>& s_samples) {
  const CMat3 k = k_matrix(fs);
  std::vector<CMat3> out;
  out.reserve(s_samples.size());
  for (double s : s_samples) out.push_back(f0 * skew_hermitian_exp(k, s));
  return out;
}

HelixSpec make_helix_spec(const FrameScalars& fs, long long max_den, double ratio_tol) {
  HelixSpec spec;
  spec.fs = fs;
  spec.k = k_matrix(fs);
  spec.nu = helix_spectrum(fs);
  spec.closure = closure_from_spectrum(spec.nu, max_den, ratio_tol);
  return spec;
}

double phase_distance(const CMat3& f0, const CMat3& f1) {
  const double gram = std::abs((f0.adjoint() * f1).trace());
  const double d2 = f0.squaredNorm() + f1.squaredNorm() - 2.0 * gram;
  return std::sqrt(std::max(0.0, d2));
}

CVec3 gauge_fix(const CVec3& z) {
  const double n = z.norm();
  if (n < 1e-300) return z;
  CVec3 w = z / n;
  int best = 0;
  double best_abs = std::abs(w(0));
  for (int i = 1; i < 3; ++i) {
    const double a = std::abs(w(i));
    if (a > best_abs) {
      best = i;
      best_abs = a;
    }
  }
  const Complex ph = w(best) / best_abs;
  return w * std::conj(ph);
}

PointCloud sweep(const SurfaceGrid& grid, const std::vector<double>& s_samples) {
  PointCloud cloud;
  cloud.reserve(static_cast<size_t>(grid.nx) * grid.ny * s_samples.size());
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const CMat3 k = k_matrix(grid.scalar(i, j));
      const CMat3& f = grid.frame(i, j);
      for (double s : s_samples) {
        PointRow row;
        row.x = grid.xs[static_cast<size_t>(i)];
        row.y = grid.ys[static_cast<size_t>(j)];
        row.s = s;
        row.z = gauge_fix((f * skew_hermitian_exp(k, s)).col(0));
        cloud.push_back(row);
      }
    }
  }
  return cloud;
}

}  // namespace stark
