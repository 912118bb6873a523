#include "stark/forms.hpp"

#include <cmath>

namespace stark {

Mat irreducible_form(const Mat& s, const Vec& d) {
  if (s.rows() != s.cols()) throw DimensionMismatch("irreducible_form: S not square");
  const Eigen::Index n = s.rows();
  if (d.size() != n) throw DimensionMismatch("irreducible_form: d size mismatch");
  Mat a = Mat::Zero(2 * n + 1, 2 * n + 1);
  const Mat ss = 0.5 * (s + s.transpose());
  a.block(0, n, n, n) = ss;
  a.block(n, 0, n, n) = ss;
  a.block(0, 2 * n, n, 1) = d;
  a.block(2 * n, 0, 1, n) = d.transpose();
  return a;
}

Mat reducible_form(const Mat& p, const Mat& q, const Mat& s, const Vec& d) {
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows()) {
    throw DimensionMismatch("reducible_form: P/Q shape mismatch");
  }
  const Eigen::Index k = p.rows();
  const Mat ps = 0.5 * (p + p.transpose());
  const Mat qs = 0.5 * (q + q.transpose());
  Mat inv(2 * k, 2 * k);
  inv << ps, qs, qs, -ps;
  const Mat rest = irreducible_form(s, d);
  const Eigen::Index m = rest.rows();
  Mat a = Mat::Zero(2 * k + m, 2 * k + m);
  a.block(0, 0, 2 * k, 2 * k) = inv;
  a.block(2 * k, 2 * k, m, m) = rest;
  return a;
}

std::vector<int> split_to_standard_order(int k, int l) {
  std::vector<int> order;
  order.reserve(static_cast<size_t>(2 * (k + l) + 1));
  for (int i = 0; i < k; ++i) order.push_back(i);                  // a
  for (int i = 0; i < l; ++i) order.push_back(2 * k + i);          // c
  for (int i = 0; i < k; ++i) order.push_back(k + i);              // phi a
  for (int i = 0; i < l; ++i) order.push_back(2 * k + l + i);      // phi c
  order.push_back(2 * (k + l));                                    // W
  return order;
}

Mat permutation_from_order(const std::vector<int>& order) {
  const Eigen::Index n = static_cast<Eigen::Index>(order.size());
  Mat p = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(i, order[static_cast<size_t>(i)]) = 1.0;
  return p;
}

Mat apply_basis_order(const Mat& a, const std::vector<int>& order) {
  const Mat p = permutation_from_order(order);
  return p * a * p.transpose();
}

Mat realify_unitary(const CMat& u) {
  const Eigen::Index n = u.rows();
  Mat r(2 * n, 2 * n);
  r.block(0, 0, n, n) = u.real();
  r.block(0, n, n, n) = -u.imag();
  r.block(n, 0, n, n) = u.imag();
  r.block(n, n, n, n) = u.real();
  return r;
}

Mat random_symmetric(int n, std::mt19937_64& rng, double amp) {
  std::normal_distribution<double> g(0.0, amp);
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = g(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

Vec random_vector(int n, std::mt19937_64& rng, double lo_norm, double hi_norm) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  const double norm = v.norm();
  if (norm < 1e-12) return Vec::Unit(n, 0) * lo_norm;
  std::uniform_real_distribution<double> u(lo_norm, hi_norm);
  return v * (u(rng) / norm);
}

CMat random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  // Fix the phase ambiguity so the distribution is Haar.
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex rj = r(j, j);
    const double a = std::abs(rj);
    if (a > 1e-300) q.col(j) *= rj / a;
  }
  return q;
}

Mat random_standard_conjugator(int n, std::mt19937_64& rng) {
  const Mat g2n = realify_unitary(random_unitary(n, rng));
  Mat g = Mat::Identity(2 * n + 1, 2 * n + 1);
  g.block(0, 0, 2 * n, 2 * n) = g2n;
  return g;
}

}  // namespace stark
