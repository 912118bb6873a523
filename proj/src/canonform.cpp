#include "stark/canonform.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace stark {

namespace {

// Complex unitary with U z = ||z|| e_1 (real positive), exact when z is
// already a multiple of e_1.
CMat unitary_to_e1(const Eigen::VectorXcd& z) {
  const Eigen::Index n = z.size();
  const double r = z.norm();
  if (r < 1e-300) return CMat::Identity(n, n);
  Complex ph = z(0);
  const double a0 = std::abs(ph);
  ph = (a0 > 1e-300) ? ph / a0 : Complex(1.0, 0.0);
  Eigen::VectorXcd w = z;
  w(0) += ph * r;
  CMat h = CMat::Identity(n, n);
  const double wn2 = w.squaredNorm();
  if (wn2 > 1e-300) h -= (2.0 / wn2) * (w * w.adjoint());
  // H z = -ph r e_1; absorb the leftover phase into the first coordinate.
  CMat d = CMat::Identity(n, n);
  d(0, 0) = -std::conj(ph);
  return d * h;
}

struct ReduceOut {
  FormKind kind;
  int k = 0;
  int l = 0;
  Mat h;
};

// a: (2n+1) x (2n+1) in standard order, assumed stark.  Returns an
// orthogonal h with h a h^T in canonical layout (standard order when
// irreducible, split order when reducible).
ReduceOut reduce_standard(const Mat& a, int n, double tol, std::vector<double>& p11_levels) {
  const int m = 2 * n;
  const double scale = std::max(1.0, a.norm());
  const Vec border = a.block(0, m, m, 1);
  ReduceOut out;
  if (border.norm() <= tol * scale) {
    // W is an eigenvector at this level: the whole holomorphic part is
    // phi-invariant and the irreducible factor degenerates to span(W).
    out.kind = FormKind::Reducible;
    out.k = n;
    out.l = 0;
    out.h = Mat::Identity(m + 1, m + 1);
    return out;
  }

  // Rotate the border into the a_1 direction by a realified unitary; this
  // also clears the phi a_1 component, and anti-commutation then forces the
  // checked diagonal entry to vanish.
  Eigen::VectorXcd z(n);
  for (int i = 0; i < n; ++i) z(i) = Complex(border(i), border(n + i));
  const CMat uc = unitary_to_e1(z);
  Mat g = Mat::Identity(m + 1, m + 1);
  g.topLeftCorner(m, m) = realify_unitary(uc);
  const Mat a1 = g * a * g.transpose();
  const double p11 = std::abs(a1(0, 0));
  p11_levels.push_back(p11);
  if (p11 > 10.0 * tol * scale) {
    throw ToleranceBreach("canonical reduction diagonal", p11);
  }
  if (n == 1) {
    out.kind = FormKind::Irreducible;
    out.k = 0;
    out.l = 1;
    out.h = g;
    return out;
  }

  // Recurse on (a_2..a_n, phi a_2..phi a_n) with phi a_1 as the new W.
  std::vector<int> sub_order;
  for (int i = 1; i < n; ++i) sub_order.push_back(i);
  for (int i = n + 1; i < 2 * n; ++i) sub_order.push_back(i);
  sub_order.push_back(n);
  const int sm = m - 1;
  Mat a_sub(sm, sm);
  for (int i = 0; i < sm; ++i) {
    for (int j = 0; j < sm; ++j) {
      a_sub(i, j) = a1(sub_order[static_cast<size_t>(i)], sub_order[static_cast<size_t>(j)]);
    }
  }
  const ReduceOut sub = reduce_standard(a_sub, n - 1, tol, p11_levels);

  // Rearrange to (sub basis..., a_1, W), apply the sub transform in place,
  // then interleave a_1 back into its canonical slot.
  std::vector<int> pre = sub_order;
  pre.push_back(0);
  pre.push_back(m);
  const Mat pi1 = permutation_from_order(pre);
  Mat hs = Mat::Identity(m + 1, m + 1);
  hs.topLeftCorner(sm, sm) = sub.h;

  std::vector<int> fin;
  if (sub.kind == FormKind::Irreducible) {
    // (b_2..b_n, phi b_2..phi b_n, phi a_1, a_1, W)
    //   -> (a_1, b, phi a_1, phi b, W)
    fin.push_back(m - 1);
    for (int i = 0; i <= n - 2; ++i) fin.push_back(i);
    fin.push_back(m - 2);
    for (int i = n - 1; i <= 2 * n - 3; ++i) fin.push_back(i);
    fin.push_back(m);
    out.kind = FormKind::Irreducible;
    out.k = 0;
    out.l = n;
  } else {
    const int k = sub.k;
    const int l2 = sub.l;
    // (alpha, phi alpha, gamma, phi gamma, phi a_1, a_1, W)
    //   -> (alpha, phi alpha, a_1, gamma, phi a_1, phi gamma, W):
    // a_1 and phi a_1 join the irreducible factor as its leading pair.
    for (int i = 0; i < 2 * k; ++i) fin.push_back(i);
    fin.push_back(m - 1);
    for (int i = 0; i < l2; ++i) fin.push_back(2 * k + i);
    fin.push_back(m - 2);
    for (int i = 0; i < l2; ++i) fin.push_back(2 * k + l2 + i);
    fin.push_back(m);
    out.kind = FormKind::Reducible;
    out.k = k;
    out.l = l2 + 1;
  }
  out.h = permutation_from_order(fin) * hs * pi1 * g;
  return out;
}

}  // namespace

Mat CanonicalForm::assembled() const {
  if (kind == FormKind::Irreducible) return irreducible_form(s, d);
  return reducible_form(p, q, s, d);
}

Mat CanonicalForm::target_phi() const {
  if (kind == FormKind::Irreducible) return standard_phi(l);
  return split_phi(k, l);
}

CanonicalForm reduce_to_canonical(const ShapeOperatorRep& rep, double tol) {
  const StarkReport sr = check_stark(rep, tol);
  if (!sr.ok) {
    throw NotStark("reduce_to_canonical: operator is not stark (austere violation " +
                   std::to_string(sr.austere.max_violation) + ", compatibility violation " +
                   std::to_string(sr.compat_violation) + ")");
  }
  const ShapeOperatorRep std_rep = rep.standardized();
  const int n = std_rep.n();
  CanonicalForm cf;
  const ReduceOut ro = reduce_standard(std_rep.mat(), n, tol, cf.p11_levels);
  Mat pre = Mat::Identity(2 * n + 1, 2 * n + 1);
  if (rep.basis() == BasisKind::Split) {
    pre = permutation_from_order(split_to_standard_order(rep.split_k(), rep.split_l()));
  }
  cf.kind = ro.kind;
  cf.k = ro.k;
  cf.l = ro.l;
  cf.transform = ro.h * pre;
  const Mat fin = cf.transform * rep.mat() * cf.transform.transpose();
  const int k = cf.k;
  const int l = cf.l;
  if (cf.kind == FormKind::Irreducible) {
    cf.s = 0.5 * (fin.block(0, n, n, n) + fin.block(n, 0, n, n).transpose());
    cf.d = fin.block(0, 2 * n, n, 1);
    cf.p = Mat(0, 0);
    cf.q = Mat(0, 0);
  } else {
    cf.p = fin.block(0, 0, k, k);
    cf.p = 0.5 * (cf.p + cf.p.transpose()).eval();
    cf.q = fin.block(0, k, k, k);
    cf.q = 0.5 * (cf.q + cf.q.transpose()).eval();
    cf.s = fin.block(2 * k, 2 * k + l, l, l);
    cf.s = 0.5 * (cf.s + cf.s.transpose()).eval();
    cf.d = fin.block(2 * k, 2 * n, l, 1);
  }
  cf.hopf_degenerate = (cf.kind == FormKind::Reducible && cf.l == 0);
  cf.residual = (fin - cf.assembled()).norm();
  cf.phi_residual =
      (cf.transform * rep.phi() * cf.transform.transpose() - cf.target_phi()).norm();
  const double scale = std::max(1.0, rep.mat().norm());
  if (cf.residual > 10.0 * tol * scale) {
    throw ToleranceBreach("canonical layout", cf.residual);
  }
  return cf;
}

std::optional<Mat> detect_invariant_subspace(const Mat& a, const Mat& phi, double tol) {
  if (a.rows() != a.cols() || phi.rows() != phi.cols() || a.rows() != phi.rows()) {
    throw DimensionMismatch("detect_invariant_subspace: shape mismatch");
  }
  const Eigen::Index full = a.rows();
  const double scale = std::max(1.0, a.norm());
  Eigen::JacobiSVD<Mat> svd(phi, Eigen::ComputeFullU);
  std::vector<Eigen::Index> img_idx, ker_idx;
  for (Eigen::Index i = 0; i < full; ++i) {
    (svd.singularValues()(i) > 0.5 ? img_idx : ker_idx).push_back(i);
  }
  const Eigen::Index m = static_cast<Eigen::Index>(img_idx.size());
  if (m < 2) return std::nullopt;
  Mat u_img(full, m), u_ker(full, full - m);
  for (Eigen::Index i = 0; i < m; ++i) u_img.col(i) = svd.matrixU().col(img_idx[static_cast<size_t>(i)]);
  for (Eigen::Index i = 0; i + m < full; ++i) u_ker.col(i) = svd.matrixU().col(ker_idx[static_cast<size_t>(i)]);

  const Mat abar = u_img.transpose() * a * u_img;
  const Mat jbar = u_img.transpose() * phi * u_img;

  // Close the border directions under {abar, jbar}.  For a stark operator
  // everything orthogonal to that closure is a phi-invariant invariant
  // subspace; anti-commutation then turns any eigenvector there into a plane.
  std::vector<Vec> basis;
  std::deque<Vec> queue;
  auto try_add = [&](const Vec& w0) {
    Vec w = w0;
    const double orig = w.norm();
    if (orig <= 1e-300) return;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& b : basis) w -= b.dot(w) * b;
    }
    if (w.norm() <= 1e-9 * orig) return;
    w /= w.norm();
    basis.push_back(w);
    queue.push_back(w);
  };
  const Mat seeds = u_img.transpose() * a * u_ker;
  for (Eigen::Index c = 0; c < seeds.cols(); ++c) {
    if (seeds.col(c).norm() > tol * scale) try_add(seeds.col(c));
  }
  while (!queue.empty() && static_cast<Eigen::Index>(basis.size()) < m) {
    const Vec w = queue.front();
    queue.pop_front();
    try_add(abar * w);
    try_add(jbar * w);
  }
  const Eigen::Index dim_r = static_cast<Eigen::Index>(basis.size());
  if (m - dim_r < 2) return std::nullopt;

  Mat comp;
  if (dim_r == 0) {
    comp = Mat::Identity(m, m);
  } else {
    Mat b(m, dim_r);
    for (Eigen::Index i = 0; i < dim_r; ++i) b.col(i) = basis[static_cast<size_t>(i)];
    const Mat qfull = Eigen::HouseholderQR<Mat>(b).householderQ();
    comp = qfull.rightCols(m - dim_r);
  }
  const Mat a_c = comp.transpose() * abar * comp;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a_c + a_c.transpose()));
  Vec v = comp * es.eigenvectors().col(0);
  v /= v.norm();
  Vec jv = jbar * v;
  jv -= v.dot(jv) * v;
  jv /= jv.norm();

  Mat plane(full, 2);
  plane.col(0) = u_img * v;
  plane.col(1) = u_img * jv;
  // Verify invariance under both a and phi before reporting.
  for (const Mat* op : {&a, &phi}) {
    for (int c = 0; c < 2; ++c) {
      Vec image = (*op) * plane.col(c);
      image -= plane * (plane.transpose() * image);
      if (image.norm() > 100.0 * tol * scale) {
        throw ToleranceBreach("invariant subspace verification", image.norm());
      }
    }
  }
  return plane;
}

double spectrum_balance_defect(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
  const Vec ev = es.eigenvalues();
  const Eigen::Index sz = ev.size();
  const double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(sz - 1))));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < sz; ++i) {
    worst = std::max(worst, std::abs(ev(i) + ev(sz - 1 - i)) / scale);
  }
  return worst;
}

bool balanced_spectrum_check(const Mat& m, double tol) {
  return spectrum_balance_defect(m) <= tol;
}

}  // namespace stark
