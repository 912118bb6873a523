#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "stark/errors.hpp"

namespace stark {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CMat3 = Eigen::Matrix3cd;
using CVec3 = Eigen::Vector3cd;

inline constexpr double kDefaultTol = 1e-9;

// Real symmetric matrix wrapper: symmetrizes on construction and remembers
// how asymmetric the raw input was, so loaders can warn without losing data.
class RealSymMatrix {
 public:
  explicit RealSymMatrix(const Mat& raw);

  const Mat& mat() const { return a_; }
  double asymmetry() const { return asymmetry_; }
  Eigen::Index n() const { return a_.rows(); }

 private:
  Mat a_;
  double asymmetry_;
};

// Characteristic polynomial det(lambda I - M) by Faddeev-LeVerrier.
// Returns coefficients in descending powers, leading coefficient 1.
std::vector<double> charpoly_coeffs(const Mat& m);

// Elementary symmetric function e_k of the eigenvalues of m.
// e_0 = 1; k < 0 or k > n gives 0.  e_k = (-1)^k c_k with c from charpoly.
double elem_sym(const Mat& m, int k);

// All-real roots of nu^3 + p nu + q = 0, ascending.  Throws
// DiscriminantNegative when -4p^3 - 27q^2 < -tol * scale^2.
std::array<double, 3> real_cubic_roots(double p, double q, double tol = kDefaultTol);

bool is_unitary(const CMat& u, double tol = kDefaultTol);
bool is_skew_hermitian(const CMat& k, double tol = kDefaultTol);

// Reduced characteristic data of a traceless skew-Hermitian 3x3 matrix K0:
// det(lambda I - K0) = lambda^3 + a_lin * lambda + i * b_const, with
// a_lin real >= 0 and b_const real.  The spectrum is i * nu with nu the real
// roots of nu^3 - a_lin * nu - b_const = 0.
struct SkewCubic {
  double a_lin;
  double b_const;
};

SkewCubic skew_traceless_cubic(const CMat3& k0);

// Eigenvalue imaginary parts nu of a traceless skew-Hermitian 3x3, ascending.
std::array<double, 3> skew_spectrum_nu(const CMat3& k0, double tol = kDefaultTol);

// Unitary polar factor of a near-unitary matrix (Newton iteration).
CMat polar_unitary(const CMat& x);

// exp(s K) for skew-Hermitian 3x3 K, via spectral projectors built from the
// closed-form spectrum; falls back to scaling-and-squaring for clustered
// spectra.  Result is polished to exact unitarity.
CMat3 skew_hermitian_exp(const CMat3& k, double s, double tol = kDefaultTol);

}  // namespace stark
