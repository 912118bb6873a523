#include <doctest.h>

#include <random>

#include "stark/matcore.hpp"

using namespace stark;

namespace {

Mat diag3(double a, double b, double c) {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

CMat3 cdiag(Complex a, Complex b, Complex c) {
  CMat3 m = CMat3::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

CMat random_skew_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (m - m.adjoint());
}

}  // namespace

TEST_CASE("charpoly of diag(1,2,3)") {
  const auto c = charpoly_coeffs(diag3(1, 2, 3));
  REQUIRE(c.size() == 4);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(-6.0));
  CHECK(c[2] == doctest::Approx(11.0));
  CHECK(c[3] == doctest::Approx(-6.0));
}

TEST_CASE("elem_sym known values and range") {
  const Mat m = diag3(1, 2, 3);
  CHECK(elem_sym(m, 0) == doctest::Approx(1.0));
  CHECK(elem_sym(m, 1) == doctest::Approx(6.0));
  CHECK(elem_sym(m, 2) == doctest::Approx(11.0));
  CHECK(elem_sym(m, 3) == doctest::Approx(6.0));
  CHECK(elem_sym(m, 4) == 0.0);
  CHECK(elem_sym(m, -1) == 0.0);
}

TEST_CASE("elem_sym agrees with the eigenvalue route") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int it = 0; it < 20; ++it) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = g(rng);
    m = Mat(0.5 * (m + m.transpose()));
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    const Vec ev = es.eigenvalues();
    std::vector<double> e(static_cast<size_t>(n) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k >= 1; --k)
        e[static_cast<size_t>(k)] += ev(i) * e[static_cast<size_t>(k - 1)];
    for (int k = 0; k <= n; ++k) {
      CHECK(elem_sym(m, k) == doctest::Approx(e[static_cast<size_t>(k)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("cubic roots: pinned and random") {
  const auto r = real_cubic_roots(-4.0, 0.0);
  CHECK(r[0] == doctest::Approx(-2.0));
  CHECK(r[1] == doctest::Approx(0.0));
  CHECK(r[2] == doctest::Approx(2.0));

  const auto z = real_cubic_roots(0.0, 0.0);
  CHECK(z[0] == doctest::Approx(0.0));
  CHECK(z[2] == doctest::Approx(0.0));

  CHECK_THROWS_AS(real_cubic_roots(1.0, 5.0), DiscriminantNegative);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int it = 0; it < 200; ++it) {
    double r1 = u(rng), r2 = u(rng);
    double r3 = -r1 - r2;
    std::array<double, 3> want{r1, r2, r3};
    std::sort(want.begin(), want.end());
    const double p = want[0] * want[1] + want[0] * want[2] + want[1] * want[2];
    const double q = -want[0] * want[1] * want[2];
    const auto got = real_cubic_roots(p, q);
    for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-7));
  }
}

TEST_CASE("skew cubic data of diag(i,-i,0)") {
  const CMat3 k = cdiag(Complex(0, 1), Complex(0, -1), Complex(0, 0));
  const SkewCubic sc = skew_traceless_cubic(k);
  CHECK(sc.a_lin == doctest::Approx(1.0));
  CHECK(sc.b_const == doctest::Approx(0.0));
  const auto nu = skew_spectrum_nu(k);
  CHECK(nu[0] == doctest::Approx(-1.0));
  CHECK(nu[1] == doctest::Approx(0.0));
  CHECK(nu[2] == doctest::Approx(1.0));
}

TEST_CASE("skew_hermitian_exp pinned value") {
  const CMat3 k = cdiag(Complex(0, 1), Complex(0, -1), Complex(0, 0));
  const CMat3 f = skew_hermitian_exp(k, M_PI);
  const CMat3 want = cdiag(-1.0, -1.0, 1.0);
  CHECK((f - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("skew_hermitian_exp near-degenerate fallback") {
  const double eps = 1e-8;
  const CMat3 k = cdiag(Complex(0, eps), Complex(0, -eps), Complex(0, 0));
  const CMat3 f = skew_hermitian_exp(k, 1.0);
  const CMat3 want = cdiag(std::exp(Complex(0, eps)), std::exp(Complex(0, -eps)), 1.0);
  CHECK((f - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("skew_hermitian_exp properties") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> us(-5.0, 5.0);
  for (int it = 0; it < 50; ++it) {
    CMat3 k = random_skew_hermitian(3, rng);
    // keep it traceless plus an imaginary trace part, as the solver allows
    const double s1 = us(rng), s2 = us(rng);
    const CMat3 f1 = skew_hermitian_exp(k, s1);
    const CMat3 f2 = skew_hermitian_exp(k, s2);
    const CMat3 f12 = skew_hermitian_exp(k, s1 + s2);
    CHECK(is_unitary(f1, 1e-12));
    CHECK((CMat3(f1 * f2) - f12).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK_THROWS_AS(skew_hermitian_exp(CMat3::Identity(), 1.0), NotSkewHermitian);
}

TEST_CASE("polar_unitary restores a drifted unitary") {
  std::mt19937_64 rng(14);
  const CMat k = random_skew_hermitian(3, rng);
  CMat3 u = skew_hermitian_exp(CMat3(k), 1.0);
  CMat drifted = u;
  drifted(0, 0) += Complex(1e-8, -2e-8);
  const CMat fixed = polar_unitary(drifted);
  CHECK(is_unitary(fixed, 1e-13));
  CHECK((fixed - CMat(u)).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("RealSymMatrix symmetrizes and records asymmetry") {
  Mat raw(2, 2);
  raw << 0.0, 1.0, 0.0, 0.0;
  const RealSymMatrix s(raw);
  CHECK(s.mat()(0, 1) == doctest::Approx(0.5));
  CHECK(s.mat()(1, 0) == doctest::Approx(0.5));
  CHECK(s.asymmetry() == doctest::Approx(1.0));
}
