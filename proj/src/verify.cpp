#include "stark/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "stark/canonform.hpp"
#include "stark/pipeline.hpp"

namespace stark {

namespace {

namespace fs = std::filesystem;

// Pinned acceptance tolerances.
constexpr double kIdentityTol = 1e-9;      // algebraic lift identity
constexpr double kPositiveTol = 1e-9;      // residuals for constructed stark samples
constexpr double kControlMargin = 1e-3;    // required violation of control samples
constexpr double kRoundTripResidual = 1e-9;
constexpr double kOrthDefect = 1e-11;
constexpr double kPhiResidual = 1e-9;
constexpr double kBalancedTol = 1e-9;
constexpr double kFiDrift = 1e-8;
constexpr double kSeedRatioErr = 1e-9;
constexpr double kRatioDriftRel = 1e-7;
constexpr double kChainRel = 1e-6;
constexpr double kCdIdentityRel = 1e-10;
constexpr double kSpectrumPinErr = 1e-12;
constexpr double kClosurePhase = 1e-8;
constexpr double kFrenetUnitarity = 1e-10;
constexpr double kResidualRatioMin = 3.5;
constexpr double kResidualAbs = 1e-5;
constexpr double kSffEntryTol = 1e-3;
constexpr double kSffTraceTol = 1e-3;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Elementary symmetric functions through an eigenvalue route, independent of
// the characteristic-polynomial recursion used by the library.
std::vector<double> eigen_elem_syms(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
  const Vec ev = es.eigenvalues();
  std::vector<double> e(static_cast<size_t>(ev.size()) + 1, 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    for (Eigen::Index k = i + 1; k >= 1; --k) {
      e[static_cast<size_t>(k)] += ev(i) * e[static_cast<size_t>(k - 1)];
    }
  }
  return e;
}

struct StarkSample {
  Mat m;
  FormKind kind;
  int k, l;
};

// Random stark operator: a normal form (irreducible when l == n) conjugated
// by a random frame rotation that preserves the standard complex structure.
StarkSample make_stark_sample(int n, int l, std::mt19937_64& rng) {
  Mat form;
  if (l == n) {
    form = irreducible_form(random_symmetric(n, rng), random_vector(n, rng));
  } else {
    const int k = n - l;
    const Mat p = random_symmetric(k, rng);
    const Mat q = random_symmetric(k, rng);
    const Mat s = l > 0 ? random_symmetric(l, rng) : Mat(0, 0);
    const Vec d = l > 0 ? random_vector(l, rng) : Vec(0);
    form = apply_basis_order(reducible_form(p, q, s, d), split_to_standard_order(k, l));
  }
  const Mat g = random_standard_conjugator(n, rng);
  StarkSample out;
  out.m = g * form * g.transpose();
  out.kind = (l == n) ? FormKind::Irreducible : FormKind::Reducible;
  out.k = (l == n) ? 0 : n - l;
  out.l = l;
  return out;
}

double lift_odd_scaled_max(const Mat& lift, const std::vector<double>& elems) {
  const double f = std::max(1.0, lift.norm());
  double worst = 0.0;
  double scale = f;
  for (int deg = 1; deg < static_cast<int>(elems.size()); deg += 2) {
    worst = std::max(worst, std::abs(elems[static_cast<size_t>(deg)]) / scale);
    scale *= f * f;
  }
  return worst;
}

CriterionResult criterion_hopf_lift(int id) {
  std::mt19937_64 rng(101);
  // (a) the bordered-determinant identity on arbitrary symmetric input
  double worst_identity = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int it = 0; it < 50; ++it) {
      const ShapeOperatorRep rep(random_symmetric(2 * n + 1, rng), BasisKind::Standard);
      worst_identity = std::max(worst_identity, lift_charpoly_identity_check(rep));
    }
  }
  // (b) stark samples: the hypersurface conditions and the vanishing of all
  // odd elementary symmetric functions of the lift hold together
  double worst_pos = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int it = 0; it < 1000; ++it) {
      const int l = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
      const StarkSample smp = make_stark_sample(n, l, rng);
      const ShapeOperatorRep rep(smp.m, BasisKind::Standard);
      worst_pos = std::max(worst_pos, check_hypersurface_austere(rep).max_violation);
      const Mat lift = hopf_lift(rep);
      std::vector<double> elems;
      for (int deg = 0; deg <= lift.rows(); ++deg) elems.push_back(elem_sym(lift, deg));
      worst_pos = std::max(worst_pos, lift_odd_scaled_max(lift, elems));
    }
  }
  // (c) controls: traceless non-austere operators, margin enforced through
  // the independent eigenvalue route, must be flagged by the library route
  int made = 0;
  double weakest_control = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 1000; ++it) {
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int attempt = 0; attempt < 100; ++attempt) {
      Mat a = random_symmetric(2 * n + 1, rng);
      a -= Mat::Identity(a.rows(), a.cols()) * (a.trace() / static_cast<double>(a.rows()));
      const ShapeOperatorRep rep(a, BasisKind::Standard);
      const Mat lift = hopf_lift(rep);
      if (lift_odd_scaled_max(lift, eigen_elem_syms(lift)) <= kControlMargin) continue;
      weakest_control =
          std::min(weakest_control, check_hypersurface_austere(rep).max_violation);
      ++made;
      break;
    }
  }
  const bool pass = worst_identity <= kIdentityTol && worst_pos <= kPositiveTol &&
                    made == 1000 && weakest_control > kControlMargin;
  return {id, "hopf_lift_equivalence", pass,
          "identity " + sci(worst_identity) + ", stark residual " + sci(worst_pos) +
              ", controls min " + sci(weakest_control) + " (" + std::to_string(made) + "/1000)"};
}

CriterionResult criterion_round_trip(int id) {
  std::mt19937_64 rng(202);
  int mismatches = 0;
  double worst_res = 0.0, worst_orth = 0.0, worst_phi = 0.0;
  int total = 0;
  for (int n = 1; n <= 4; ++n) {
    for (int it = 0; it < 1000; ++it) {
      const int l = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
      const StarkSample smp = make_stark_sample(n, l, rng);
      const ShapeOperatorRep rep(smp.m, BasisKind::Standard);
      const CanonicalForm cf = reduce_to_canonical(rep);
      ++total;
      if (cf.kind != smp.kind || cf.k != smp.k || cf.l != smp.l) ++mismatches;
      worst_res = std::max(worst_res, cf.residual / std::max(1.0, smp.m.norm()));
      worst_orth = std::max(
          worst_orth, (cf.transform.transpose() * cf.transform -
                       Mat::Identity(cf.transform.rows(), cf.transform.cols()))
                          .cwiseAbs()
                          .maxCoeff());
      worst_phi = std::max(worst_phi, cf.phi_residual);
      if (smp.kind == FormKind::Reducible && it % 4 == 0) {
        // also feed the split-order presentation directly
        const Mat p = random_symmetric(smp.k, rng);
        const Mat q = random_symmetric(smp.k, rng);
        const Mat s = l > 0 ? random_symmetric(l, rng) : Mat(0, 0);
        const Vec d = l > 0 ? random_vector(l, rng) : Vec(0);
        const ShapeOperatorRep split_rep(reducible_form(p, q, s, d), BasisKind::Split, smp.k, l);
        const CanonicalForm cf2 = reduce_to_canonical(split_rep);
        ++total;
        if (cf2.kind != FormKind::Reducible || cf2.k != smp.k || cf2.l != l) ++mismatches;
        worst_res = std::max(worst_res, cf2.residual / std::max(1.0, split_rep.mat().norm()));
        worst_phi = std::max(worst_phi, cf2.phi_residual);
      }
    }
  }
  const bool pass = mismatches == 0 && worst_res <= kRoundTripResidual &&
                    worst_orth <= kOrthDefect && worst_phi <= kPhiResidual;
  return {id, "normal_form_round_trip", pass,
          std::to_string(total - mismatches) + "/" + std::to_string(total) + " kinds, residual " +
              sci(worst_res) + ", orth " + sci(worst_orth) + ", phi " + sci(worst_phi)};
}

CriterionResult criterion_balanced(int id) {
  std::mt19937_64 rng(303);
  double worst_pos = 0.0;
  for (int it = 0; it < 600; ++it) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int l = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
    const StarkSample smp = make_stark_sample(n, l, rng);
    const ShapeOperatorRep rep(smp.m, BasisKind::Standard);
    worst_pos = std::max(worst_pos, spectrum_balance_defect(rep.mat()));
    worst_pos = std::max(worst_pos, spectrum_balance_defect(rep.restricted()));
  }
  int detected = 0;
  double weakest_control = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 600; ++it) {
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int attempt = 0; attempt < 100; ++attempt) {
      const Mat a = random_symmetric(2 * n + 1, rng);
      const double defect = spectrum_balance_defect(a);
      if (defect <= kControlMargin) continue;
      if (!balanced_spectrum_check(a, kBalancedTol)) ++detected;
      weakest_control = std::min(weakest_control, defect);
      break;
    }
  }
  const bool pass = worst_pos <= kBalancedTol && detected == 600;
  return {id, "balanced_spectra", pass,
          "stark defect " + sci(worst_pos) + ", controls " + std::to_string(detected) +
              "/600 (min " + sci(weakest_control) + ")"};
}

CriterionResult criterion_first_integrals(int id) {
  // Generic run: seed scalars (1, 1, 1), pushed along y.
  FlowConfig fc;
  fc.c0 = -1.0 / 3.0;
  fc.d0 = 2.0 / 3.0;
  fc.v0 = 1.0;
  fc.y_max = 0.5;
  fc.step = 1e-3;
  const FlowResult flow = integrate_flow(fc);
  bool all_valid = true;
  for (char v : flow.valid) all_valid = all_valid && v;
  const double seed_err = std::abs(flow.seed_ratio - 189.0) / 189.0;

  // Fixed-point run: (C, D) = (1, -1) annihilates the x-system exactly; no
  // state recovery exists there, so the run must degrade to axis data only.
  FlowConfig eq;
  eq.c0 = 1.0;
  eq.d0 = -1.0;
  eq.v0 = 1.0;
  eq.x_max = 1.0;
  eq.step = 1e-3;
  eq.strict = false;
  const FlowResult eqf = integrate_flow(eq);
  double eq_drift = 0.0;
  for (double c : eqf.c_axis) eq_drift = std::max(eq_drift, std::abs(c - 1.0));
  for (double d : eqf.d_axis) eq_drift = std::max(eq_drift, std::abs(d + 1.0));

  const bool pass = all_valid && flow.max_fi_drift <= kFiDrift && seed_err <= kSeedRatioErr &&
                    flow.max_ratio_drift <= kRatioDriftRel && eqf.cd_only && eq_drift <= kFiDrift;
  return {id, "flow_first_integrals", pass,
          "drift " + sci(flow.max_fi_drift) + ", ratio drift " + sci(flow.max_ratio_drift) +
              ", equilibrium drift " + sci(eq_drift)};
}

template <size_t N, typename F>
std::array<double, N> rk4(const std::array<double, N>& y, double h, F&& f) {
  auto mix = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
    std::array<double, N> out;
    for (size_t i = 0; i < N; ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  const auto k1 = f(y);
  const auto k2 = f(mix(y, 0.5 * h, k1));
  const auto k3 = f(mix(y, 0.5 * h, k2));
  const auto k4 = f(mix(y, h, k3));
  std::array<double, N> out;
  for (size_t i = 0; i < N; ++i) {
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

CriterionResult criterion_chain_rule(int id) {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> ub(0.6, 1.8), um(0.3, 1.2), uk(-0.8, 0.8);
  double worst = 0.0;
  double worst_traj = 0.0;
  for (int run = 0; run < 10; ++run) {
    const FrameScalars seed{ub(rng), um(rng), uk(rng)};
    const ReducedState st0 = to_reduced(seed);
    const FirstIntegrals fi0 = first_integrals(st0);

    // Trajectory route: push (t, u, v) through its own x-system and induce
    // (C, D); push (C, D, v) directly; the two must trace the same curves.
    {
      const double h = 1e-3;
      std::array<double, 3> tuv{st0.t, st0.u, st0.v};
      std::array<double, 3> cdv{fi0.c, fi0.d, st0.v};
      for (int step = 0; step < 300; ++step) {
        tuv = rk4<3>(tuv, h, [](const std::array<double, 3>& y) {
          const TuvRates r = tuv_rhs_x({y[0], y[1], y[2]});
          return std::array<double, 3>{r.dt, r.du, r.dv};
        });
        cdv = rk4<3>(cdv, h, [](const std::array<double, 3>& y) {
          const CdRates r = cd_rhs({y[0], y[1]});
          return std::array<double, 3>{r.dc, r.dd, v_rhs_x(y[0], y[2])};
        });
        const FirstIntegrals induced = first_integrals({tuv[0], tuv[1], tuv[2]});
        worst_traj = std::max({worst_traj, std::abs(induced.c - cdv[0]),
                               std::abs(induced.d - cdv[1]), std::abs(tuv[2] - cdv[2])});
      }
    }

    FlowConfig fc;
    fc.c0 = fi0.c;
    fc.d0 = fi0.d;
    fc.v0 = st0.v;
    fc.x_max = 0.3;
    fc.step = 1e-2;
    const FlowResult flow = integrate_flow(fc);
    for (int ih = 0; ih < flow.nxh; ++ih) {
      const ReducedState st = flow.state_half(ih, 0);
      const FrameScalars fs = from_reduced(st);
      const PdeRates r2 = pde_rhs(fs, CoframeDirection::Omega2);
      const PdeRates r3 = pde_rhs(fs, CoframeDirection::Omega3);
      const std::array<double, 3> wx = transport_w_x(fs);
      const std::array<double, 3> wy = transport_w_y(fs);
      // coordinate-route derivatives against the reduced-system route
      const TuvRates tx = tuv_rhs_x(st);
      const TuvRates ty = tuv_rhs_y(st);
      const double sv = std::sqrt(st.v), suv = std::sqrt(st.u * st.v);
      const double dbx_a = 1.5 * sv * tx.dv;
      const double dmx_a = 1.5 * suv * (tx.du * st.v + st.u * tx.dv);
      const double dkx_a = tx.dt * fs.beta + st.t * dbx_a;
      const double dby_a = 1.5 * sv * ty.dv;
      const double dmy_a = 1.5 * suv * (ty.du * st.v + st.u * ty.dv);
      const double dky_a = ty.dt * fs.beta + st.t * dby_a;
      const double dbx_b = wx[1] * r2.dbeta + wx[2] * r3.dbeta;
      const double dmx_b = wx[1] * r2.dmu + wx[2] * r3.dmu;
      const double dkx_b = wx[1] * r2.dkappa + wx[2] * r3.dkappa;
      const double dby_b = wy[1] * r2.dbeta + wy[2] * r3.dbeta;
      const double dmy_b = wy[1] * r2.dmu + wy[2] * r3.dmu;
      const double dky_b = wy[1] * r2.dkappa + wy[2] * r3.dkappa;
      const auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
      };
      worst = std::max({worst, rel(dbx_a, dbx_b), rel(dmx_a, dmx_b), rel(dkx_a, dkx_b),
                        rel(dby_a, dby_b), rel(dmy_a, dmy_b), rel(dky_a, dky_b)});
    }
  }
  return {id, "chain_rule_consistency", worst <= kChainRel && worst_traj <= kChainRel,
          "trajectory gap " + sci(worst_traj) + ", pointwise mismatch " + sci(worst) +
              " over 10 seeds"};
}

CriterionResult criterion_cd_identities(int id) {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> ut(-2.0, 2.0), uu(0.05, 2.0), uv(0.2, 3.0);
  double worst = 0.0;
  for (int it = 0; it < 10000; ++it) {
    const ReducedState st{ut(rng), uu(rng), uv(rng)};
    const HelixCubic hc = cubic_coeffs(from_reduced(st));
    const CdIdentityValues iv = derived_cd_identities(st);
    worst = std::max(worst,
                     std::abs(iv.a_from_cd - hc.a_lin) / std::max(1.0, std::abs(hc.a_lin)));
    worst = std::max(worst,
                     std::abs(iv.b_from_cd - hc.b_const) / std::max(1.0, std::abs(hc.b_const)));
  }
  return {id, "derived_cd_identities", worst <= kCdIdentityRel,
          "worst relative mismatch " + sci(worst) + " over 10000 states"};
}

CriterionResult criterion_helix_closure(int id) {
  std::string detail;
  bool pass = true;

  // Pinned case: (beta, mu, kappa) = (3, 0, 0) has angles (-2, 0, 2) and the
  // helix closes projectively at length pi with gap fraction 1/1.
  const FrameScalars fs300{3.0, 0.0, 0.0};
  const HelixSpec spec = make_helix_spec(fs300);
  const double nu_err = std::max({std::abs(spec.nu[0] + 2.0), std::abs(spec.nu[1]),
                                  std::abs(spec.nu[2] - 2.0)});
  pass = pass && nu_err <= kSpectrumPinErr;
  pass = pass && spec.closure.closed && !spec.closure.degenerate;
  pass = pass && std::abs(spec.closure.length - M_PI) <= kSpectrumPinErr * M_PI;
  pass = pass && spec.closure.n1 == 1 && spec.closure.n2 == 1;
  const CMat3 f_l = skew_hermitian_exp(spec.k, spec.closure.length);
  const double phase_err = phase_distance(CMat3::Identity(), f_l);
  pass = pass && phase_err <= kClosurePhase;

  // Pinned gap fractions.
  const ClosureResult c312 = closure_from_spectrum({-3.0, 1.0, 2.0});
  pass = pass && c312.closed && c312.n1 == 1 && c312.n2 == 4 &&
         std::abs(c312.length - 2.0 * M_PI) <= 1e-12 * 2.0 * M_PI;
  const ClosureResult irr =
      closure_from_spectrum({-1.0 - std::sqrt(2.0), 1.0, std::sqrt(2.0)}, 1000000, 1e-12);
  pass = pass && !irr.closed;
  const ClosureResult dg = closure_from_spectrum({0.7, 0.7, 0.7});
  pass = pass && dg.closed && dg.degenerate;
  const ClosureResult one = closure_from_spectrum({0.0, 0.0, 1.0});
  pass = pass && one.closed && one.n1 == 0 && one.n2 == 1 &&
         std::abs(one.length - 2.0 * M_PI) <= 1e-12 * 2.0 * M_PI;

  // Frenet frames stay unitary far out and the two spectrum routes agree.
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> ub(0.2, 3.0), um(0.0, 2.0), uk(-2.0, 2.0),
      us(-100.0, 100.0);
  double worst_unit = 0.0, worst_spec = 0.0;
  for (int it = 0; it < 100; ++it) {
    const FrameScalars fs{ub(rng), um(rng), uk(rng)};
    const CMat3 k = k_matrix(fs);
    const CMat3 f = skew_hermitian_exp(k, us(rng));
    worst_unit = std::max(worst_unit,
                          (f.adjoint() * f - CMat3::Identity()).cwiseAbs().maxCoeff());
    const Complex tau = k.trace() / 3.0;
    const std::array<double, 3> nu_m = skew_spectrum_nu(CMat3(k - tau * CMat3::Identity()));
    const std::array<double, 3> nu_c = helix_spectrum(fs);
    for (int i = 0; i < 3; ++i) worst_spec = std::max(worst_spec, std::abs(nu_m[i] - nu_c[i]));
  }
  pass = pass && worst_unit <= kFrenetUnitarity && worst_spec <= 1e-9;
  detail = "pin err " + sci(nu_err) + ", phase " + sci(phase_err) + ", unitarity " +
           sci(worst_unit) + ", spectrum " + sci(worst_spec);
  return {id, "helix_closure", pass, detail};
}

CriterionResult criterion_frobenius(int id) {
  std::vector<double> residuals;
  for (const double h : {2e-2, 1e-2, 5e-3, 2.5e-3}) {
    FlowConfig fc;
    fc.c0 = -1.0 / 3.0;
    fc.d0 = 2.0 / 3.0;
    fc.v0 = 1.0;
    fc.x_max = 0.2;
    fc.y_max = 0.2;
    fc.step = h;
    const FlowResult flow = integrate_flow(fc);
    const SurfaceGrid grid = integrate_surface_frames(flow, CMat3::Identity());
    residuals.push_back(grid.max_residual());
  }
  bool pass = residuals.back() <= kResidualAbs;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < residuals.size(); ++i) {
    const double ratio = residuals[i] / std::max(residuals[i + 1], 1e-300);
    worst_ratio = std::min(worst_ratio, ratio);
  }
  pass = pass && worst_ratio >= kResidualRatioMin;
  std::string detail = "residuals";
  for (double r : residuals) detail += " " + sci(r);
  detail += ", min halving ratio " + sci(worst_ratio);
  return {id, "frobenius_residual", pass, detail};
}

CriterionResult criterion_second_fundamental_form(int id) {
  FlowConfig fc;
  fc.c0 = -1.0 / 3.0;
  fc.d0 = 2.0 / 3.0;
  fc.v0 = 1.0;
  fc.x_max = 0.02;
  fc.y_max = 0.02;
  fc.step = 1e-3;
  const FlowResult flow = integrate_flow(fc);
  const SurfaceGrid grid = integrate_surface_frames(flow, CMat3::Identity());
  const double hx = grid.xs[1] - grid.xs[0];
  const double hy = grid.ys[1] - grid.ys[0];
  const std::array<std::array<int, 2>, 5> nodes{{{5, 5}, {10, 10}, {15, 15}, {5, 15}, {15, 5}}};
  double worst_entry = 0.0, worst_trace = 0.0, worst_sym = 0.0;
  for (const auto& node : nodes) {
    const int i = node[0], j = node[1];
    const CMat3& f = grid.frame(i, j);
    const CVec3 x = f.col(0);
    const CVec3 e1 = f.col(1);
    const CVec3 e3 = f.col(2);
    const FrameScalars fs = grid.scalar(i, j);
    const Complex ivec(0.0, 1.0);
    auto normal_at = [&](int a, int b) { return CVec3(ivec * grid.frame(a, b).col(2)); };
    const CVec3 dn_x = (normal_at(i + 1, j) - normal_at(i - 1, j)) / (2.0 * hx);
    const CVec3 dn_y = (normal_at(i, j + 1) - normal_at(i, j - 1)) / (2.0 * hy);
    const CVec3 dn_s = ivec * CVec3((f * k_matrix(fs)).col(2));
    auto hor = [&](const CVec3& v) { return CVec3(v - x * x.dot(v)); };
    const std::array<CVec3, 3> bvec{e1, CVec3(ivec * e1), e3};
    const std::array<CVec3, 3> dirs{dn_s, dn_x, dn_y};
    Mat raw(3, 3);
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        raw(p, q) = -bvec[static_cast<size_t>(p)].dot(hor(dirs[static_cast<size_t>(q)])).real();
      }
    }
    Mat coords = Mat::Zero(3, 3);
    coords(0, 0) = 1.0;
    const std::array<double, 3> wx = transport_w_x(fs);
    const std::array<double, 3> wy = transport_w_y(fs);
    for (int p = 0; p < 3; ++p) {
      coords(p, 1) = wx[static_cast<size_t>(p)];
      coords(p, 2) = wy[static_cast<size_t>(p)];
    }
    const Mat a_est = raw * coords.inverse();
    Mat model(3, 3);
    model << 0.0, fs.mu, fs.beta, fs.mu, 0.0, 0.0, fs.beta, 0.0, 0.0;
    worst_entry = std::max(worst_entry, (a_est - model).cwiseAbs().maxCoeff());
    worst_trace = std::max(worst_trace, std::abs(a_est.trace()));
    worst_sym = std::max(worst_sym, (a_est - a_est.transpose()).cwiseAbs().maxCoeff());
  }
  const bool pass =
      worst_entry <= kSffEntryTol && worst_trace <= kSffTraceTol && worst_sym <= kSffEntryTol;
  return {id, "second_fundamental_form", pass,
          "entry err " + sci(worst_entry) + ", trace " + sci(worst_trace) + ", asym " +
              sci(worst_sym)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ConstructConfig determinism_config(const fs::path& dir) {
  ConstructConfig cfg;
  cfg.has_scalars0 = true;
  cfg.scalars0 = {1.0, 1.0, 1.0};
  cfg.x_max = 0.02;
  cfg.y_max = 0.02;
  cfg.step = 5e-3;
  cfg.s_max = 0.5;
  cfg.s_step = 0.1;
  cfg.points_csv = (dir / "points.csv").string();
  cfg.report_json = (dir / "report.json").string();
  cfg.grid_csv = (dir / "grid.csv").string();
  return cfg;
}

CriterionResult criterion_determinism(int id, const std::string& work_dir) {
  const fs::path base = fs::absolute(work_dir);
  fs::create_directories(base);
  bool pass = true;
  std::string detail;

  // In-process double run.
  const fs::path da = base / "a";
  const fs::path db = base / "b";
  fs::create_directories(da);
  fs::create_directories(db);
  run_construct(determinism_config(da));
  run_construct(determinism_config(db));
  for (const char* name : {"points.csv", "grid.csv"}) {
    if (slurp(da / name) != slurp(db / name)) {
      pass = false;
      detail += std::string(name) + " differs; ";
    }
  }
  {
    auto strip = [](const fs::path& p) {
      auto j = nlohmann::json::parse(slurp(p / "report.json"));
      j.erase("outputs");
      return j.dump();
    };
    if (strip(da) != strip(db)) {
      pass = false;
      detail += "report differs; ";
    }
  }

#ifdef STARK_CLI_PATH
  // Same config through the command-line binary, byte-compared wholesale.
  const std::string cli = STARK_CLI_PATH;
  if (fs::exists(cli)) {
    const nlohmann::json cfg_json = {
        {"seed", {{"beta", 1.0}, {"mu", 1.0}, {"kappa", 1.0}}},
        {"domain",
         {{"x_min", 0.0}, {"x_max", 0.02}, {"y_min", 0.0}, {"y_max", 0.02}, {"step", 5e-3}}},
        {"arc", {{"s_min", 0.0}, {"s_max", 0.5}, {"s_step", 0.1}}},
        {"outputs",
         {{"points_csv", "points.csv"}, {"report_json", "report.json"}, {"grid_csv", "grid.csv"}}}};
    for (const char* run : {"cli_a", "cli_b"}) {
      const fs::path dir = base / run;
      fs::create_directories(dir);
      std::ofstream(dir / "cfg.json") << cfg_json.dump(2);
      const std::string cmd = "cd '" + dir.string() + "' && '" + cli +
                              "' construct --config cfg.json > construct.log 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        pass = false;
        detail += std::string(run) + " exited nonzero; ";
      }
    }
    for (const char* name : {"points.csv", "grid.csv", "report.json"}) {
      if (slurp(base / "cli_a" / name) != slurp(base / "cli_b" / name)) {
        pass = false;
        detail += std::string("cli ") + name + " differs; ";
      }
    }
  } else {
    pass = false;
    detail += "cli binary missing; ";
  }
#else
  pass = false;
  detail += "cli path not configured; ";
#endif

  if (detail.empty()) detail = "library and cli outputs byte-identical across reruns";
  return {id, "cli_determinism", pass, detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria(const std::string& work_dir) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_hopf_lift(1));
  out.push_back(criterion_round_trip(2));
  out.push_back(criterion_balanced(3));
  out.push_back(criterion_first_integrals(4));
  out.push_back(criterion_chain_rule(5));
  out.push_back(criterion_cd_identities(6));
  out.push_back(criterion_helix_closure(7));
  out.push_back(criterion_frobenius(8));
  out.push_back(criterion_second_fundamental_form(9));
  out.push_back(criterion_determinism(10, work_dir));
  return out;
}

}  // namespace stark
