#include <doctest.h>

#include <numeric>
#include <random>

#include "stark/helix.hpp"

using namespace stark;

TEST_CASE("k_matrix equals the helix-direction Maurer-Cartan value") {
  const FrameScalars fs{2.2, 0.9, -1.1};
  CHECK((k_matrix(fs) - mc_matrix(fs, {1.0, 0.0, 0.0})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectrum of (beta, mu, kappa) = (3, 0, 0) and its closure") {
  const auto nu = helix_spectrum({3.0, 0.0, 0.0});
  CHECK(nu[0] == doctest::Approx(-2.0));
  CHECK(nu[1] == doctest::Approx(0.0));
  CHECK(nu[2] == doctest::Approx(2.0));
  const HelixSpec spec = make_helix_spec({3.0, 0.0, 0.0});
  CHECK(spec.closure.closed);
  CHECK(!spec.closure.degenerate);
  CHECK(spec.closure.length == doctest::Approx(M_PI));
  CHECK(spec.closure.n1 == 1);
  CHECK(spec.closure.n2 == 1);
  // after one period the frame returns to itself up to phase: here exactly -I
  const CMat3 f = skew_hermitian_exp(spec.k, spec.closure.length);
  CHECK((f + CMat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(phase_distance(CMat3::Identity(), f) < 1e-12);
}

TEST_CASE("two spectrum routes agree") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> ub(0.2, 3.0), um(0.0, 2.0), uk(-2.0, 2.0);
  for (int it = 0; it < 100; ++it) {
    const FrameScalars fs{ub(rng), um(rng), uk(rng)};
    const CMat3 k = k_matrix(fs);
    const Complex tau = k.trace() / 3.0;
    const auto nu_m = skew_spectrum_nu(CMat3(k - tau * CMat3::Identity()));
    const auto nu_c = helix_spectrum(fs);
    for (int i = 0; i < 3; ++i) CHECK(nu_m[i] == doctest::Approx(nu_c[i]).epsilon(1e-9));
    // the spectrum sums to zero and solves the cubic
    const HelixCubic hc = cubic_coeffs(fs);
    CHECK(nu_c[0] + nu_c[1] + nu_c[2] == doctest::Approx(0.0));
    for (int i = 0; i < 3; ++i) {
      const double r = nu_c[i];
      CHECK(r * r * r - hc.a_lin * r - hc.b_const == doctest::Approx(0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("closure decisions from pinned spectra") {
  const ClosureResult c312 = closure_from_spectrum({-3.0, 1.0, 2.0});
  CHECK(c312.closed);
  CHECK(c312.n1 == 1);
  CHECK(c312.n2 == 4);
  CHECK(c312.length == doctest::Approx(2.0 * M_PI));

  const ClosureResult one = closure_from_spectrum({0.0, 0.0, 1.0});
  CHECK(one.closed);
  CHECK(one.n1 == 0);
  CHECK(one.n2 == 1);
  CHECK(one.length == doctest::Approx(2.0 * M_PI));

  const ClosureResult dg = closure_from_spectrum({0.7, 0.7, 0.7});
  CHECK(dg.closed);
  CHECK(dg.degenerate);

  // irrational gap ratio: not closed even with a huge denominator budget
  const ClosureResult irr =
      closure_from_spectrum({-1.0 - std::sqrt(2.0), 1.0, std::sqrt(2.0)}, 1000000, 1e-12);
  CHECK(!irr.closed);

  // but a loose tolerance accepts a rational approximation
  const ClosureResult loose =
      closure_from_spectrum({-1.0 - std::sqrt(2.0), 1.0, std::sqrt(2.0)}, 1000000, 1e-2);
  CHECK(loose.closed);
}

TEST_CASE("closure consistency on random commensurate spectra") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> ug(0.1, 3.0);
  for (int it = 0; it < 50; ++it) {
    const long long p = 1 + static_cast<long long>(rng() % 7);
    const long long q = p + static_cast<long long>(rng() % 9);
    const double unit = ug(rng);
    // gaps p*unit and q*unit around a centered spectrum
    const double n0 = -(2.0 * p + q) * unit / 3.0;
    const std::array<double, 3> nu{n0, n0 + p * unit, n0 + (p + q) * unit};
    const ClosureResult cr = closure_from_spectrum(nu, 64, 1e-8);
    REQUIRE(cr.closed);
    const long long g = std::gcd(p, q);
    CHECK(cr.n1 == p / g);
    CHECK(cr.n2 == q / g);
    // The claimed length really is a projective period of exp(s K0).  The
    // metric is a square root of a cancellation, so machine-level agreement
    // shows up around sqrt(eps) ~ 3e-8.
    CMat3 k0 = CMat3::Zero();
    for (int i = 0; i < 3; ++i) k0(i, i) = Complex(0.0, nu[static_cast<size_t>(i)]);
    const CMat3 f0 = skew_hermitian_exp(k0, 0.7);
    const CMat3 f1 = skew_hermitian_exp(k0, 0.7 + cr.length);
    CHECK(phase_distance(f0, f1) < 1e-7);
  }
}

TEST_CASE("frenet_integrate matches the closed-form exponential") {
  const FrameScalars fs{1.0, 1.0, 1.0};
  std::mt19937_64 rng(53);
  CMat3 r = CMat3::Zero();
  std::normal_distribution<double> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = Complex(g(rng), g(rng));
  const CMat3 f0 = polar_unitary(r);
  const std::vector<double> samples{0.0, 0.5, 1.25};
  const auto frames = frenet_integrate(f0, fs, samples);
  REQUIRE(frames.size() == 3);
  CHECK((frames[0] - f0).cwiseAbs().maxCoeff() < 1e-13);
  const CMat3 want = f0 * skew_hermitian_exp(k_matrix(fs), 1.25);
  CHECK((frames[2] - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gauge_fix normalizes and aligns the dominant entry") {
  const CVec3 z(Complex(0, 0), Complex(0, 2), Complex(0, 0));
  const CVec3 g = gauge_fix(z);
  CHECK(std::abs(g.norm() - 1.0) < 1e-15);
  CHECK(g(1).real() == doctest::Approx(1.0));
  CHECK(std::abs(g(1).imag()) < 1e-15);

  const CVec3 tie(Complex(0, 1), Complex(0, 1), Complex(0, 0));
  const CVec3 gt = gauge_fix(tie);
  CHECK(gt(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(gt(0).imag()) < 1e-15);

  // gauge fixing is projective: any phase and scale lands on the same point
  const CVec3 w(Complex(0.3, -0.4), Complex(1.1, 0.2), Complex(-0.5, 0.9));
  const CVec3 a = gauge_fix(w);
  const CVec3 b = gauge_fix(CVec3(Complex(-2.0, 1.5) * w));
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sweep emits node-major rows with gauge-fixed points") {
  FlowConfig cfg;
  cfg.c0 = -1.0 / 3.0;
  cfg.d0 = 2.0 / 3.0;
  cfg.v0 = 1.0;
  cfg.x_max = 2e-3;
  cfg.y_max = 2e-3;
  cfg.step = 2e-3;
  const FlowResult flow = integrate_flow(cfg);
  const SurfaceGrid grid = integrate_surface_frames(flow, CMat3::Identity());
  const std::vector<double> samples{0.0, 0.5};
  const PointCloud cloud = sweep(grid, samples);
  REQUIRE(cloud.size() == 8);
  CHECK(cloud[0].x == doctest::Approx(0.0));
  CHECK(cloud[0].s == doctest::Approx(0.0));
  CHECK(cloud[1].s == doctest::Approx(0.5));
  CHECK(cloud[2].y == doctest::Approx(2e-3));
  CHECK(cloud[4].x == doctest::Approx(2e-3));
  for (const PointRow& row : cloud) {
    CHECK(std::abs(row.z.norm() - 1.0) < 1e-12);
  }
  // the s = 0 point at the origin is the gauge-fixed first frame column
  const CVec3 want = gauge_fix(grid.frame(0, 0).col(0));
  CHECK((cloud[0].z - want).cwiseAbs().maxCoeff() < 1e-14);
}
