#pragma once

#include <random>
#include <vector>

#include "stark/matcore.hpp"

namespace stark {

// Shape operator of the irreducible normal form on a (2n+1)-frame
// (a_1..a_n, phi a_1..phi a_n, W):
//   A = [[0, S, d], [S, 0, 0], [d^T, 0, 0]]  with S symmetric n x n.
// The diagonal blocks vanish; all the data sits in the a/phi-a coupling S
// and the border d against the characteristic direction W.
Mat irreducible_form(const Mat& s, const Vec& d);

// Reducible normal form on (a_1..a_k, phi a_1..phi a_k, c_1..c_l,
// phi c_1..phi c_l, W): block diag of [[P, Q], [Q, -P]] (the phi-invariant
// part) and the irreducible form on the remaining 2l+1 directions.
Mat reducible_form(const Mat& p, const Mat& q, const Mat& s, const Vec& d);

// Permutation sending the split basis order (a, phi a, c, phi c, W) to the
// standard order (a, c, phi a, phi c, W).  Returned as new-index list:
// order[i] = old index placed at new position i.
std::vector<int> split_to_standard_order(int k, int l);

// P(i, order[i]) = 1; acting as P * v reorders coordinates: (Pv)_i = v_order[i].
Mat permutation_from_order(const std::vector<int>& order);

// B = P A P^T, i.e. B(i, j) = A(order[i], order[j]).
Mat apply_basis_order(const Mat& a, const std::vector<int>& order);

// Realification of a complex n x n matrix U on (a; phi a):
// [[Re U, -Im U], [Im U, Re U]].  Unitary U gives an orthogonal result that
// commutes with the complex structure phi = [[0, -I], [I, 0]].
Mat realify_unitary(const CMat& u);

Mat random_symmetric(int n, std::mt19937_64& rng, double amp = 1.0);
Vec random_vector(int n, std::mt19937_64& rng, double lo_norm = 0.3, double hi_norm = 2.0);
CMat random_unitary(int n, std::mt19937_64& rng);

// Random orthogonal conjugator preserving the standard phi and W direction:
// realified U(n) acting on (a_1..a_n, phi a_1..phi a_n), identity on W.
Mat random_standard_conjugator(int n, std::mt19937_64& rng);

}  // namespace stark
