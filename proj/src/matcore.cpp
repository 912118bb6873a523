#include "stark/matcore.hpp"

#include <algorithm>
#include <cmath>

namespace stark {

RealSymMatrix::RealSymMatrix(const Mat& raw) {
  if (raw.rows() != raw.cols()) {
    throw DimensionMismatch("shape operator must be square, got " + std::to_string(raw.rows()) +
                            "x" + std::to_string(raw.cols()));
  }
  asymmetry_ = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  a_ = 0.5 * (raw + raw.transpose());
}

std::vector<double> charpoly_coeffs(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("charpoly_coeffs: matrix not square");
  const Eigen::Index n = m.rows();
  std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
  c[0] = 1.0;
  Mat ak = m;
  for (Eigen::Index k = 1; k <= n; ++k) {
    c[static_cast<size_t>(k)] = -ak.trace() / static_cast<double>(k);
    if (k < n) ak = m * (ak + c[static_cast<size_t>(k)] * Mat::Identity(n, n));
  }
  return c;
}

double elem_sym(const Mat& m, int k) {
  if (k == 0) return 1.0;
  if (k < 0 || k > m.rows()) return 0.0;
  const std::vector<double> c = charpoly_coeffs(m);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * c[static_cast<size_t>(k)];
}

std::array<double, 3> real_cubic_roots(double p, double q, double tol) {
  const double scale = std::max({1.0, std::pow(std::abs(p), 1.5), std::abs(q)});
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (disc < -tol * scale * scale) {
    throw DiscriminantNegative("cubic discriminant " + std::to_string(disc) +
                               " negative beyond tolerance; roots not all real");
  }
  std::array<double, 3> roots{};
  if (p >= 0.0) {
    // disc >= 0 with p >= 0 forces p ~ 0, q ~ 0: a (near-)triple root.
    const double r = std::cbrt(-q);
    roots = {r, r, r};
  } else {
    const double mth = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * mth);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    constexpr double k2pi3 = 2.0943951023931953;  // 2*pi/3
    for (int k = 0; k < 3; ++k) roots[static_cast<size_t>(k)] = mth * std::cos(theta - k2pi3 * k);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_unitary(const CMat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMat d = u.adjoint() * u - CMat::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_skew_hermitian(const CMat& k, double tol) {
  if (k.rows() != k.cols()) return false;
  return (k + k.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

SkewCubic skew_traceless_cubic(const CMat3& k0) {
  // e2 via sum of principal 2x2 minors; real for skew-Hermitian input.
  Complex e2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      e2 += k0(i, i) * k0(j, j) - k0(i, j) * k0(j, i);
    }
  }
  const Complex det = k0.determinant();
  // charpoly(K0) = lambda^3 + e2 lambda - det; det is purely imaginary here.
  return SkewCubic{e2.real(), -det.imag()};
}

std::array<double, 3> skew_spectrum_nu(const CMat3& k0, double tol) {
  const SkewCubic c = skew_traceless_cubic(k0);
  // eigenvalues are i*nu with nu^3 - a_lin nu - b_const = 0.
  return real_cubic_roots(-c.a_lin, -c.b_const, tol);
}

CMat polar_unitary(const CMat& x) {
  CMat u = x;
  for (int it = 0; it < 50; ++it) {
    const CMat next = 0.5 * (u + u.adjoint().inverse());
    const double step = (next - u).cwiseAbs().maxCoeff();
    u = next;
    if (step < 1e-15) break;
  }
  return u;
}

namespace {

// Scaling-and-squaring expm for small skew-Hermitian matrices; used only when
// the closed-form spectral route is ill-conditioned (clustered eigenvalues).
CMat3 expm_taylor(const CMat3& m) {
  int squarings = 0;
  double norm = m.cwiseAbs().maxCoeff() * 3.0;
  CMat3 t = m;
  while (norm > 0.25 && squarings < 60) {
    t *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  CMat3 result = CMat3::Identity();
  CMat3 term = CMat3::Identity();
  for (int k = 1; k <= 16; ++k) {
    term = term * t / static_cast<double>(k);
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

}  // namespace

CMat3 skew_hermitian_exp(const CMat3& k, double s, double tol) {
  if (!is_skew_hermitian(k, std::max(tol, 1e-12) * std::max(1.0, k.cwiseAbs().maxCoeff()))) {
    throw NotSkewHermitian("skew_hermitian_exp: input is not skew-Hermitian");
  }
  const Complex tau = Complex(0.0, k.trace().imag() / 3.0);
  const CMat3 k0 = k - tau * CMat3::Identity();
  const std::array<double, 3> nu = skew_spectrum_nu(k0, tol);
  const double span = std::max({std::abs(nu[0]), std::abs(nu[1]), std::abs(nu[2]), 1.0});
  const double sep = std::min({nu[1] - nu[0], nu[2] - nu[1]});

  const Complex phase = std::exp(s * tau);
  CMat3 x;
  if (sep < 1e-6 * span) {
    x = phase * expm_taylor(CMat3(s * k0));
  } else {
    x = CMat3::Zero();
    for (int j = 0; j < 3; ++j) {
      const int a = (j + 1) % 3;
      const int b = (j + 2) % 3;
      const Complex la(0.0, nu[static_cast<size_t>(j)]);
      const Complex ra(0.0, nu[static_cast<size_t>(a)]);
      const Complex rb(0.0, nu[static_cast<size_t>(b)]);
      const CMat3 proj = (k0 - ra * CMat3::Identity()) * (k0 - rb * CMat3::Identity()) /
                         ((la - ra) * (la - rb));
      x += std::exp(s * la) * proj;
    }
    x *= phase;
  }
  const double defect = (x.adjoint() * x - CMat3::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-13) x = polar_unitary(x);
  return x;
}

}  // namespace stark
