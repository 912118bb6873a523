#pragma once

#include <optional>
#include <vector>

#include "stark/austere.hpp"
#include "stark/forms.hpp"

namespace stark {

enum class FormKind { Irreducible, Reducible };

// Result of reducing a stark shape operator to normal form by an orthogonal
// change of adapted frame.
//
// Irreducible (l = n, k = 0), standard basis order:
//   A = [[0, S, d], [S, 0, 0], [d^T, 0, 0]]
// with S symmetric tridiagonal and d = r e_1 as produced by the reduction.
//
// Reducible (k >= 1, k + l = n), split basis order:
//   A = blockdiag([[P, Q], [Q, -P]], irreducible part on 2l+1 directions)
// the first factor acting on a phi-invariant subspace.  l = 0 is the Hopf
// case: W itself is an eigenvector and the whole holomorphic part is
// phi-invariant.
struct CanonicalForm {
  FormKind kind;
  int k = 0;
  int l = 0;
  Mat s;          // l x l symmetric block of the irreducible part
  Vec d;          // border vector of the irreducible part
  Mat p, q;       // k x k blocks of the invariant part (reducible only)
  Mat transform;  // orthogonal H with H A H^T equal to the assembled form
  double residual;      // || H A H^T - assembled form ||_F
  double phi_residual;  // || H phi H^T - target phi pattern ||_F
  bool hopf_degenerate = false;
  std::vector<double> p11_levels;  // checked diagonal residues per recursion level

  Mat assembled() const;  // the normal form rebuilt from the stored blocks
  Mat target_phi() const;
};

// Reduce a stark operator to canonical form.  Throws NotStark if the input
// fails the stark checks at the given tolerance, and ToleranceBreach if an
// internal zero that the structure theory promises fails to materialize.
CanonicalForm reduce_to_canonical(const ShapeOperatorRep& rep, double tol = kDefaultTol);

// Deterministic search for a proper phi-invariant A-invariant subspace of
// the holomorphic distribution.  a and phi are full (2n+1) matrices, phi with
// W in its kernel.  Returns an orthonormal (2n+1) x 2 basis of such a plane,
// or nullopt when none exists (the operator is irreducible).
//
// The search closes the border directions A W under the action of {A, phi}
// restricted to the holomorphic part; anything left over is invariant, and an
// eigenvector v there yields the plane span{v, phi v} since the restricted
// operator anti-commutes with phi.
std::optional<Mat> detect_invariant_subspace(const Mat& a, const Mat& phi,
                                             double tol = kDefaultTol);

// Largest scaled defect of the pairing lambda_i + lambda_{m+1-i} = 0 over the
// ascending spectrum of a symmetric matrix.
double spectrum_balance_defect(const Mat& m);

bool balanced_spectrum_check(const Mat& m, double tol = kDefaultTol);

}  // namespace stark
