#include <doctest.h>

#include <random>

#include "stark/starkflow.hpp"

using namespace stark;

TEST_CASE("reduced coordinates round trip") {
  const ReducedState st = to_reduced({1.0, 1.0, 1.0});
  CHECK(st.t == doctest::Approx(1.0));
  CHECK(st.u == doctest::Approx(1.0));
  CHECK(st.v == doctest::Approx(1.0));
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ub(0.1, 4.0), um(0.0, 3.0), uk(-3.0, 3.0);
  for (int it = 0; it < 100; ++it) {
    const FrameScalars fs{ub(rng), um(rng), uk(rng)};
    const FrameScalars back = from_reduced(to_reduced(fs));
    CHECK(back.beta == doctest::Approx(fs.beta).epsilon(1e-12));
    CHECK(back.mu == doctest::Approx(fs.mu).epsilon(1e-12));
    CHECK(back.kappa == doctest::Approx(fs.kappa).epsilon(1e-12));
  }
  CHECK_THROWS_AS(to_reduced({0.0, 1.0, 0.0}), OutsideCanonicalPatch);
  CHECK_THROWS_AS(to_reduced({1.0, -0.1, 0.0}), OutsideCanonicalPatch);
  CHECK_THROWS_AS(from_reduced({0.0, 1.0, -1.0}), OutsideCanonicalPatch);
}

TEST_CASE("first integrals: pinned values and recovery") {
  const FirstIntegrals fi = first_integrals({1.0, 1.0, 1.0});
  CHECK(fi.c == doctest::Approx(-1.0 / 3.0));
  CHECK(fi.d == doctest::Approx(2.0 / 3.0));

  const double v0 = std::pow(3.0, 2.0 / 3.0);
  const FirstIntegrals fz = first_integrals({0.0, 0.0, v0});
  CHECK(fz.c == doctest::Approx(-std::pow(3.0, -5.0 / 3.0)));
  CHECK(fz.d == doctest::Approx(std::pow(3.0, -1.0 / 3.0)));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ut(-2.0, 2.0), uu(0.0, 2.0), uv(0.2, 3.0);
  for (int it = 0; it < 200; ++it) {
    const ReducedState st{ut(rng), uu(rng), uv(rng)};
    const ReducedState back = recover_state(first_integrals(st), st.v);
    CHECK(back.t == doctest::Approx(st.t).epsilon(1e-10));
    CHECK(back.u == doctest::Approx(st.u).epsilon(1e-7));
    CHECK(back.v == doctest::Approx(st.v));
  }
  CHECK_THROWS_AS(recover_state({0.0, 10.0}, 1e-3), UDegenerate);
  CHECK_THROWS_AS(recover_state({0.0, 1.0}, -1.0), OutsideCanonicalPatch);
}

TEST_CASE("pinned right-hand sides") {
  const CdRates cd = cd_rhs({-1.0 / 3.0, 2.0 / 3.0});
  CHECK(cd.dc == doctest::Approx(28.0 / 9.0));
  CHECK(cd.dd == doctest::Approx(14.0 / 9.0));
  CHECK(v_rhs_x(-1.0 / 3.0, 1.0) == doctest::Approx(4.0 / 3.0));

  const TuvRates tx = tuv_rhs_x({1.0, 1.0, 1.0});
  CHECK(tx.dt == doctest::Approx(2.0));
  CHECK(tx.du == doctest::Approx(-2.0));
  CHECK(tx.dv == doctest::Approx(4.0 / 3.0));
  const TuvRates ty = tuv_rhs_y({1.0, 1.0, 1.0});
  CHECK(ty.dt == doctest::Approx(-4.0));
  CHECK(ty.du == doctest::Approx(-2.0 / 3.0));
  CHECK(ty.dv == doctest::Approx(2.0));

  CHECK_THROWS_AS(tuv_rhs_y({1.0, 0.0, 1.0}), UDegenerate);
  CHECK_THROWS_AS(tuv_rhs_x({1.0, 1.0, 0.0}), OutsideCanonicalPatch);
}

TEST_CASE("first integrals are flat along y and follow cd_rhs along x") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ut(-1.5, 1.5), uu(0.1, 1.5), uv(0.3, 2.5);
  const double h = 1e-6;
  for (int it = 0; it < 50; ++it) {
    const ReducedState st{ut(rng), uu(rng), uv(rng)};
    const TuvRates rx = tuv_rhs_x(st);
    const TuvRates ry = tuv_rhs_y(st);
    auto fi_at = [&](const TuvRates& r, double eps) {
      return first_integrals({st.t + eps * r.dt, st.u + eps * r.du, st.v + eps * r.dv});
    };
    // central differences of (C, D) along both coordinate directions
    const FirstIntegrals fxp = fi_at(rx, h), fxm = fi_at(rx, -h);
    const FirstIntegrals fyp = fi_at(ry, h), fym = fi_at(ry, -h);
    const CdRates want = cd_rhs(first_integrals(st));
    CHECK((fxp.c - fxm.c) / (2 * h) == doctest::Approx(want.dc).epsilon(1e-5));
    CHECK((fxp.d - fxm.d) / (2 * h) == doctest::Approx(want.dd).epsilon(1e-5));
    CHECK(std::abs((fyp.c - fym.c) / (2 * h)) < 1e-5);
    CHECK(std::abs((fyp.d - fym.d) / (2 * h)) < 1e-5);
    // v follows its own closed x-equation
    const double dv_want = v_rhs_x(first_integrals(st).c, st.v);
    CHECK(rx.dv == doctest::Approx(dv_want).epsilon(1e-10));
  }
}

TEST_CASE("helix cubic coefficients and the closure invariant") {
  const HelixCubic h111 = cubic_coeffs({1.0, 1.0, 1.0});
  CHECK(h111.a_lin == doctest::Approx(7.0 / 3.0));
  CHECK(h111.b_const == doctest::Approx(7.0 / 27.0));
  const HelixCubic h300 = cubic_coeffs({3.0, 0.0, 0.0});
  CHECK(h300.a_lin == doctest::Approx(4.0));
  CHECK(h300.b_const == doctest::Approx(0.0));
  const HelixCubic h100 = cubic_coeffs({1.0, 0.0, 0.0});
  CHECK(h100.a_lin == doctest::Approx(4.0 / 3.0));
  CHECK(h100.b_const == doctest::Approx(-16.0 / 27.0));

  CHECK(invariant_ratio({1.0, 1.0, 1.0}) == doctest::Approx(189.0));
  CHECK_THROWS_AS(invariant_ratio({3.0, 0.0, 0.0}), BZero);
}

TEST_CASE("cd identities reproduce the cubic coefficients") {
  const ReducedState st{0.0, 0.0, 1.0};
  const FirstIntegrals fi = first_integrals(st);
  CHECK(fi.c == doctest::Approx(-1.0 / 3.0));
  CHECK(fi.d == doctest::Approx(1.0 / 3.0));
  const CdIdentityValues iv = derived_cd_identities(st);
  CHECK(iv.a_from_cd == doctest::Approx(4.0 / 3.0));
  CHECK(iv.b_from_cd == doctest::Approx(-16.0 / 27.0));
  const HelixCubic hc = cubic_coeffs(from_reduced(st));
  CHECK(hc.a_lin == doctest::Approx(iv.a_from_cd));
  CHECK(hc.b_const == doctest::Approx(iv.b_from_cd));
}

TEST_CASE("strict flow on a small valid window") {
  FlowConfig cfg;
  cfg.c0 = -1.0 / 3.0;
  cfg.d0 = 2.0 / 3.0;
  cfg.v0 = 1.0;
  cfg.x_max = 0.01;
  cfg.y_max = 0.01;
  cfg.step = 1e-3;
  const FlowResult flow = integrate_flow(cfg);
  CHECK(flow.nx == 11);
  CHECK(flow.ny == 11);
  CHECK(flow.nxh == 21);
  CHECK(!flow.cd_only);
  for (int i = 0; i < flow.nx; ++i)
    for (int j = 0; j < flow.ny; ++j) CHECK(flow.valid_node(i, j));
  const ReducedState s00 = flow.state_node(0, 0);
  CHECK(s00.t == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s00.u == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s00.v == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(flow.max_fi_drift < 1e-10);
  CHECK(flow.max_ratio_drift < 1e-9);
  CHECK(flow.seed_ratio == doctest::Approx(189.0));
  CHECK(flow.xs.front() == doctest::Approx(0.0));
  CHECK(flow.xs.back() == doctest::Approx(0.01));
}

TEST_CASE("equilibrium seed degrades to axis-only data in lenient mode") {
  FlowConfig cfg;
  cfg.c0 = 1.0;
  cfg.d0 = -1.0;
  cfg.v0 = 1.0;
  cfg.x_max = 0.5;
  cfg.step = 1e-3;
  cfg.strict = false;
  const FlowResult flow = integrate_flow(cfg);
  CHECK(flow.cd_only);
  for (double c : flow.c_axis) CHECK(c == doctest::Approx(1.0));
  for (double d : flow.d_axis) CHECK(d == doctest::Approx(-1.0));
  for (char v : flow.valid) CHECK(!v);
}

TEST_CASE("strict flow flags impossible recovery and step underflow") {
  FlowConfig cfg;
  cfg.c0 = 0.0;
  cfg.d0 = 10.0;
  cfg.v0 = 1e-3;
  cfg.x_max = 0.0;
  cfg.y_max = 0.0;
  CHECK_THROWS_AS(integrate_flow(cfg), OutsideValidRegion);

  FlowConfig tiny;
  tiny.c0 = -1.0 / 3.0;
  tiny.d0 = 2.0 / 3.0;
  tiny.v0 = 1.0;
  tiny.x_max = 1.0;
  tiny.step = 1e-9;
  CHECK_THROWS_AS(integrate_flow(tiny), StepUnderflow);
}
