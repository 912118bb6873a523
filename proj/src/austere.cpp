#include "stark/austere.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stark/canonform.hpp"

namespace stark {

ShapeOperatorRep::ShapeOperatorRep(const Mat& raw, BasisKind basis, int split_k, int split_l)
    : basis_(basis), split_k_(split_k), split_l_(split_l) {
  RealSymMatrix sym(raw);
  a_ = sym.mat();
  load_asymmetry_ = sym.asymmetry();
  const Eigen::Index side = a_.rows();
  if (side < 3 || side % 2 == 0) {
    throw DimensionMismatch("shape operator side must be odd and >= 3, got " +
                            std::to_string(side));
  }
  n_ = static_cast<int>((side - 1) / 2);
  if (basis_ == BasisKind::Standard) {
    split_k_ = 0;
    split_l_ = 0;
  } else {
    if (split_k_ < 0 || split_l_ < 0 || split_k_ + split_l_ != n_) {
      throw DimensionMismatch("split basis dims (" + std::to_string(split_k_) + ", " +
                              std::to_string(split_l_) + ") incompatible with n = " +
                              std::to_string(n_));
    }
  }
}

Mat standard_phi(int n) {
  Mat j = Mat::Zero(2 * n + 1, 2 * n + 1);
  j.block(0, n, n, n) = -Mat::Identity(n, n);
  j.block(n, 0, n, n) = Mat::Identity(n, n);
  return j;
}

Mat split_phi(int k, int l) {
  const int n = k + l;
  Mat j = Mat::Zero(2 * n + 1, 2 * n + 1);
  j.block(0, k, k, k) = -Mat::Identity(k, k);
  j.block(k, 0, k, k) = Mat::Identity(k, k);
  j.block(2 * k, 2 * k + l, l, l) = -Mat::Identity(l, l);
  j.block(2 * k + l, 2 * k, l, l) = Mat::Identity(l, l);
  return j;
}

Mat ShapeOperatorRep::phi() const {
  return basis_ == BasisKind::Standard ? standard_phi(n_) : split_phi(split_k_, split_l_);
}

Mat ShapeOperatorRep::phi_h() const { return phi().topLeftCorner(2 * n_, 2 * n_); }

ShapeOperatorRep ShapeOperatorRep::standardized() const {
  if (basis_ == BasisKind::Standard) return *this;
  const auto order = split_to_standard_order(split_k_, split_l_);
  return ShapeOperatorRep(apply_basis_order(a_, order), BasisKind::Standard);
}

namespace {

AustereReport austere_residuals(const Mat& a, double cos2, const Mat& a_tilde, int j_max,
                                double tol) {
  AustereReport rep;
  const double f = std::max(1.0, a.norm());
  rep.max_violation = 0.0;
  for (int j = 0; j <= j_max; ++j) {
    const double lhs = elem_sym(a, 2 * j + 1);
    const double rhs = cos2 * elem_sym(a_tilde, 2 * j - 1);
    const double scale = std::pow(f, 2 * j + 1);
    const double r = std::abs(lhs - rhs) / scale;
    rep.residuals.push_back(r);
    rep.max_violation = std::max(rep.max_violation, r);
  }
  rep.ok = rep.max_violation <= tol;
  return rep;
}

}  // namespace

AustereReport check_general_austere(const Mat& a, double theta,
                                    const std::vector<int>& tilde_indices, double tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("check_general_austere: matrix not square");
  std::set<int> seen;
  for (int idx : tilde_indices) {
    if (idx < 0 || idx >= a.rows()) {
      throw DimensionMismatch("tilde index " + std::to_string(idx) + " out of range");
    }
    if (!seen.insert(idx).second) {
      throw DimensionMismatch("tilde index " + std::to_string(idx) + " repeated");
    }
  }
  const int m = static_cast<int>(tilde_indices.size());
  Mat a_tilde(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      a_tilde(i, j) = a(tilde_indices[static_cast<size_t>(i)], tilde_indices[static_cast<size_t>(j)]);
    }
  }
  const double c = std::cos(theta);
  return austere_residuals(0.5 * (a + a.transpose()), c * c, a_tilde,
                           static_cast<int>(a.rows()) / 2, tol);
}

AustereReport check_hypersurface_austere(const ShapeOperatorRep& rep, double tol) {
  return austere_residuals(rep.mat(), 1.0, rep.restricted(), rep.n(), tol);
}

StarkReport check_stark(const ShapeOperatorRep& rep, double tol) {
  StarkReport out;
  out.austere = check_hypersurface_austere(rep, tol);
  const Mat at = rep.restricted();
  const Mat j = rep.phi_h();
  const Mat anti = j.transpose() * at * j + at;
  out.compat_violation = anti.norm() / std::max(1.0, at.norm());
  out.compat_ok = out.compat_violation <= tol;
  out.ok = out.austere.ok && out.compat_ok;
  return out;
}

Mat hopf_lift(const ShapeOperatorRep& rep) {
  const int m = 2 * rep.n();
  const Mat& a = rep.mat();
  Mat lift = Mat::Zero(m + 2, m + 2);
  lift(0, m + 1) = 1.0;
  lift(m + 1, 0) = 1.0;
  lift.block(1, 1, m, m) = a.topLeftCorner(m, m);
  lift.block(1, m + 1, m, 1) = a.block(0, m, m, 1);
  lift.block(m + 1, 1, 1, m) = a.block(m, 0, 1, m);
  lift(m + 1, m + 1) = a(m, m);
  return lift;
}

double lift_charpoly_identity_check(const ShapeOperatorRep& rep) {
  const Mat lift = hopf_lift(rep);
  const std::vector<double> actual = charpoly_coeffs(lift);
  const std::vector<double> ca = charpoly_coeffs(rep.mat());
  const std::vector<double> ct = charpoly_coeffs(rep.restricted());
  // lambda * p_A - p_tilde, expressed on descending powers of the lift size.
  std::vector<double> expect(actual.size(), 0.0);
  for (size_t i = 0; i < ca.size(); ++i) expect[i] = ca[i];
  for (size_t i = 0; i < ct.size(); ++i) expect[i + 2] -= ct[i];
  const double f = std::max(1.0, lift.norm());
  double worst = 0.0;
  double scale = 1.0;
  for (size_t i = 0; i < actual.size(); ++i) {
    worst = std::max(worst, std::abs(actual[i] - expect[i]) / scale);
    scale *= f;
  }
  return worst;
}

Classification classify(const ShapeOperatorRep& rep, double tol) {
  const StarkReport sr = check_stark(rep, tol);
  if (!sr.ok) {
    throw NotStark("classify: operator is not stark (austere violation " +
                   std::to_string(sr.austere.max_violation) + ", compatibility violation " +
                   std::to_string(sr.compat_violation) + ")");
  }
  Classification cls;
  const Mat& a = rep.mat();
  const int m = 2 * rep.n();
  const Vec border = a.block(0, m, m, 1);
  cls.hopf_violation = border.norm() / std::max(1.0, a.norm());
  cls.is_hopf = cls.hopf_violation <= tol;
  const CanonicalForm cf = reduce_to_canonical(rep, tol);
  cls.reducible = cf.kind == FormKind::Reducible;
  cls.k = cf.k;
  cls.l = cf.l;
  return cls;
}

}  // namespace stark
