#pragma once

#include <vector>

#include "stark/matcore.hpp"

namespace stark {

enum class BasisKind { Standard, Split };

// Shape operator of a real hypersurface, side 2n+1, together with the basis
// convention used for its entries.  The last basis vector is always the
// characteristic direction W; the first 2n span the holomorphic distribution.
//
//   Standard: (a_1..a_n, phi a_1..phi a_n, W)
//   Split:    (a_1..a_k, phi a_1..phi a_k, c_1..c_l, phi c_1..phi c_l, W)
//
// The matrix is symmetrized on construction; the raw asymmetry is kept so
// loaders can report it.
class ShapeOperatorRep {
 public:
  ShapeOperatorRep(const Mat& raw, BasisKind basis, int split_k = 0, int split_l = 0);

  const Mat& mat() const { return a_; }
  BasisKind basis() const { return basis_; }
  int n() const { return n_; }
  int split_k() const { return split_k_; }
  int split_l() const { return split_l_; }
  double load_asymmetry() const { return load_asymmetry_; }

  // Restriction of A to the holomorphic distribution (leading 2n block).
  Mat restricted() const { return a_.topLeftCorner(2 * n_, 2 * n_); }

  // Complex structure on the holomorphic distribution, 2n x 2n, matching
  // this representation's basis order.
  Mat phi_h() const;

  // Full (2n+1) complex-structure matrix; W spans its kernel.
  Mat phi() const;

  // Same operator re-expressed in standard basis order.
  ShapeOperatorRep standardized() const;

 private:
  Mat a_;
  BasisKind basis_;
  int n_;
  int split_k_, split_l_;
  double load_asymmetry_;
};

// Complex-structure matrices for the two basis conventions (full size, with
// the W direction in the kernel).
Mat standard_phi(int n);
Mat split_phi(int k, int l);

struct AustereReport {
  bool ok;
  double max_violation;            // worst scaled residual over all degrees
  std::vector<double> residuals;   // scaled residual per condition index j
};

// General austere system: for j = 0..floor(dim/2),
//   e_{2j+1}(A) = cos^2(theta) * e_{2j-1}(A restricted to tilde_indices),
// with out-of-range elementary symmetric functions read as zero.  Residuals
// are scaled by max(1, ||A||_F)^{2j+1}.
AustereReport check_general_austere(const Mat& a, double theta,
                                    const std::vector<int>& tilde_indices,
                                    double tol = kDefaultTol);

// Hypersurface austere conditions: e_{2j+1}(A) = e_{2j-1}(A_tilde) for
// j = 0..n, where A_tilde is the restriction to the holomorphic distribution.
AustereReport check_hypersurface_austere(const ShapeOperatorRep& rep, double tol = kDefaultTol);

struct StarkReport {
  AustereReport austere;
  bool compat_ok;
  double compat_violation;  // scaled norm of phi^T A_tilde phi + A_tilde
  bool ok;                  // austere.ok && compat_ok
};

// Stark = hypersurface austere + the restricted operator anti-commutes with
// the complex structure.
StarkReport check_stark(const ShapeOperatorRep& rep, double tol = kDefaultTol);

// Hopf lift: bordered (2n+2) operator
//   [[0, 0, 1], [0, A_tilde, v], [1, v^T, alpha]]
// with v the holomorphic part of A W and alpha = <A W, W>.  Its
// characteristic polynomial is lambda * p_A(lambda) - p_{A_tilde}(lambda),
// so e_k(lift) = e_k(A) - e_{k-2}(A_tilde); the hypersurface austere system
// is exactly "all odd elementary symmetric functions of the lift vanish".
Mat hopf_lift(const ShapeOperatorRep& rep);

// Max scaled mismatch between charpoly(hopf_lift(A)) and the bordered-
// determinant identity above; should sit at rounding level for any input.
double lift_charpoly_identity_check(const ShapeOperatorRep& rep);

struct Classification {
  bool is_hopf;           // W is an eigenvector of A
  double hopf_violation;  // scaled norm of the border A W - <AW,W> W
  bool reducible;         // canonical form has a nontrivial invariant part
  int k;                  // invariant-part complex dimension
  int l;                  // irreducible-part complex dimension
};

// Classify a stark operator; throws NotStark otherwise.
Classification classify(const ShapeOperatorRep& rep, double tol = kDefaultTol);

}  // namespace stark
