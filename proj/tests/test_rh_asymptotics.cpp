#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thasym/error.hpp"
#include "thasym/model.hpp"

using namespace thasym;

namespace {

const ModelField& pset_field() {
  static const ModelField mf = model_field(example_pair(ExampleParams{}));
  return mf;
}

const CircleGrid& unit512() {
  static const CircleGrid g = CircleGrid::make(1.0, 512);
  return g;
}

Mat4 unit(int i, int j) {
  Mat4 m = Mat4::Zero();
  m(i, j) = 1.0;
  return m;
}

// Small-norm jump minus identity, rebuilt by conjugating the lens jumps with the model solution
Mat4 conjugated_jump(const ModelField& mf, cplx z, int n, bool interior) {
  const cplx phi = mf.pair.phi(z), phit = mf.pair.phi(1.0 / z);
  const cplx w = mf.pair.w(z), wt = mf.pair.w(1.0 / z);
  const cplx zn = std::pow(z, interior ? n : -n);
  const Mat4 lens = zn * (unit(2, 1) / phit - unit(3, 0) / phi);
  const Mat4 lam = lambda_eval(mf, z, interior ? Region::inside : Region::outside);
  if (interior) {
    const Mat4 x = Mat4::Identity() + wt * unit(0, 2);
    return lam * x.inverse() * lens * x * lam.inverse();
  }
  const Mat4 x = Mat4::Identity() - w * unit(1, 3);
  return lam * x * lens * x.inverse() * lam.inverse();
}

}  // namespace

TEST(RhAsymptotics, ModelFieldConstants) {
  const auto& mf = pset_field();
  EXPECT_LT(mf.involution_residual, kInvolutionTolerance);
  // w = d phi with d d~ = 1 forces alpha(0) = 1 for these positive-sign factors
  EXPECT_LT(std::abs(mf.alpha0 - 1.0), 1e-12);
  EXPECT_LT(std::abs(mf.crho0.imag()), 1e-12);
}

TEST(RhAsymptotics, ModelJumpAndJ23) {
  const auto rep = verify_model_jump(pset_field(), unit512(), {1e-3, 5e-4, 2.5e-4, 1.25e-4});
  EXPECT_LE(rep.residual, 1e-9);
  EXPECT_LE(rep.j23_max, 1e-11);
}

TEST(RhAsymptotics, LambdaAtZeroAndInfinity) {
  const auto& mf = pset_field();
  EXPECT_LT((lambda_eval(mf, 0.0, Region::inside) - mf.lambda_at_zero).cwiseAbs().maxCoeff(), 1e-10);
  const double d3 = (lambda_eval(mf, cplx(0.0, 1e3), Region::outside) - Mat4::Identity()).cwiseAbs().maxCoeff();
  const double d4 = (lambda_eval(mf, cplx(0.0, 1e4), Region::outside) - Mat4::Identity()).cwiseAbs().maxCoeff();
  EXPECT_LT(d4 * 1e4, 2.0 * d3 * 1e3);
  EXPECT_LT(d4, d3);
}

TEST(RhAsymptotics, GEntriesMatchConjugatedLensJumps) {
  // g may differ from the conjugated jump by terms analytic on the far side of its contour,
  // which do not reach any R entry; compare the moments that do
  const auto& mf = pset_field();
  const auto cs = default_contours(mf);
  const int nodes = 512;
  auto moments_gap = [&](GLabel l, bool interior) {
    const auto [r, c] = label_position(l);
    const double rad = interior ? cs.inner : cs.outer;
    double gap = 0.0, size = 0.0;
    for (int k = 0; k <= 24; k += 4) {
      cplx diff = 0.0, mom = 0.0;
      for (int j = 0; j < nodes; ++j) {
        const cplx mu = std::polar(rad, 2.0 * kPi * (j + 0.5) / nodes);
        const cplx wgt = std::pow(mu, interior ? k : -k);
        const cplx g = g_eval(mu, l, mf);
        diff += wgt * (g - conjugated_jump(mf, mu, 0, interior)(r, c));
        mom += wgt * g;
      }
      gap = std::max(gap, std::abs(diff) / nodes);
      size = std::max(size, std::abs(mom) / nodes);
    }
    return gap / size;
  };
  for (GLabel l : kInteriorLabels) EXPECT_LT(moments_gap(l, true), 1e-12) << label_name(l);
  for (GLabel l : kExteriorLabels) EXPECT_LT(moments_gap(l, false), 1e-12) << label_name(l);
}

TEST(RhAsymptotics, REntriesMatchAdaptiveQuadrature) {
  const auto& mf = pset_field();
  const auto rt = R_entries(mf, {10});
  const auto& e = rt.at(10);
  for (GLabel l : kInteriorLabels) {
    const cplx ref = oracle::circle_mean([&](double t) {
      const cplx mu = std::polar(rt.contours.inner, t);
      return std::pow(mu, 10) * g_eval(mu, l, mf);
    });
    EXPECT_LT(std::abs(e.r1_at_0.at(l) - ref), 1e-13 + 1e-10 * std::abs(ref)) << label_name(l);
  }
  for (GLabel l : kExteriorLabels) {
    const cplx ref = oracle::circle_mean([&](double t) {
      const cplx mu = std::polar(rt.contours.outer, t);
      return std::pow(mu, -10) * g_eval(mu, l, mf);
    });
    EXPECT_LT(std::abs(e.r1_at_0.at(l) - ref), 1e-13 + 1e-10 * std::abs(ref)) << label_name(l);
  }
}

TEST(RhAsymptotics, ShiftIdentityPerLabelClass) {
  const auto& mf = pset_field();
  const auto rt = R_entries(mf, {9, 10, 11, 19, 20, 21, 29, 30, 31});
  for (int n : {10, 20, 30}) {
    for (GLabel l : kInteriorLabels)
      EXPECT_LE(oracle::rel(rt.at(n).r1_at_0.at(l), rt.at(n + 1).rprime.at(l)), 1e-12);
    for (GLabel l : kExteriorLabels)
      EXPECT_LE(oracle::rel(rt.at(n).r1_at_0.at(l), rt.at(n - 1).rprime.at(l)), 1e-12);
  }
}

TEST(RhAsymptotics, ContourIndependence) {
  const auto& mf = pset_field();
  const auto base = default_contours(mf);
  ContourSpec moved = base;
  moved.inner = 0.5 * (base.inner + 1.0);
  moved.outer = 0.5 * (base.outer + 1.0);
  const auto a = R_entries(mf, {12}), b = R_entries(mf, {12}, moved);
  EXPECT_LT(oracle::rel(a.at(12).E, b.at(12).E), 1e-8);
}

TEST(RhAsymptotics, HAsymptoticsImproveWithN) {
  const auto& mf = pset_field();
  const auto mt = circle_moments(mf.pair, 24, 1, 1);
  const auto rt = R_entries(mf, {7, 8, 15, 16, 23, 24});
  double prev = 1.0;
  for (int n : {8, 16, 24}) {
    const auto exact = ortho_poly(mt, n - 1).h;
    const double err = oracle::rel(exact, h_asym(n, rt, mf));
    EXPECT_LT(err, prev) << n;
    EXPECT_LT(oracle::rel(h_asym(n, rt, mf), h_asym_rprime(n, rt, mf)), 1e-6) << n;
    prev = err;
  }
  EXPECT_LT(prev, 1e-8);
}

TEST(RhAsymptotics, CSolutionAgreesWithClosedForm) {
  const auto& mf = pset_field();
  const auto rt = R_entries(mf, {23, 24});
  const auto sol = solve_C_from_P(P_asym(24, mf, rt));
  const auto [c2, c4] = C24_asym(24, rt, mf);
  EXPECT_LT(oracle::rel(sol.c.c2, c2), 1e-6);
  EXPECT_LT(oracle::rel(sol.c.c4, c4), 1e-6);
}

TEST(RhAsymptotics, ExactCMatchesAsymptoticAtN24) {
  const auto& mf = pset_field();
  const auto mt = circle_moments(mf.pair, 24, 1, 1);
  const auto rt = R_entries(mf, {8, 16, 23, 24});
  double prev = 1.0;
  for (int n : {8, 24}) {
    const auto ce = exact_C(mf.pair, ortho_poly(mt, n), ortho_poly(mt, n - 1), 1, 1);
    const auto [c2, c4] = C24_asym(n, rt, mf);
    const double err = std::max(oracle::rel(ce.c2, c2), oracle::rel(ce.c4, c4));
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LE(prev, 5e-2);
}

TEST(RhAsymptotics, PolynomialAsymptotics) {
  const auto& mf = pset_field();
  const auto mt = circle_moments(mf.pair, 40, 1, 1);
  const auto rt = R_entries(mf, {10, 15, 20, 30, 40});
  for (int n : {20, 30, 40})
    EXPECT_LT(oracle::rel(poly_asym(2.0, n, Region::outside, rt, mf), ortho_poly(mt, n).eval(2.0)), 1e-3) << n;
  double prev = 1.0;
  for (int n : {10, 15, 20}) {
    const double inner = oracle::rel(poly_asym(0.3, n, Region::inside, rt, mf), ortho_poly(mt, n).eval(0.3));
    EXPECT_LT(inner, 0.1) << n;
    EXPECT_LT(inner, prev) << n;
    prev = inner;
  }
}

TEST(RhAsymptotics, BoundaryPolynomialSplitsIntoBothParts) {
  const auto& mf = pset_field();
  const auto mt = circle_moments(mf.pair, 16, 1, 1);
  const auto rt = R_entries(mf, {16});
  const cplx z = std::polar(1.0, 0.9);
  EXPECT_LT(oracle::rel(poly_asym(z, 16, Region::boundary_plus, rt, mf), ortho_poly(mt, 16).eval(z)), 1e-4);
}

TEST(RhAsymptotics, KappaStableAndComplex) {
  const auto k = kappa(ExampleParams{}, 128);
  EXPECT_LE(k.change, 1e-10);
  EXPECT_GE(std::abs(k.value.imag()), 1e-6);
  // the constant E(n) approaches is real for real parameters
  EXPECT_LT(std::abs(k.corrected.imag()), 1e-12);
}

TEST(RhAsymptotics, CorrectedKappaDescribesE) {
  const ExampleParams p;
  const auto& mf = pset_field();
  const auto k = kappa(p, 128);
  const auto rt = R_entries(mf, {24, 48});
  const double g24 = 24 * std::abs(rt.at(24).E / E_asym_example(24, p, k.corrected) - 1.0);
  const double g48 = 48 * std::abs(rt.at(48).E / E_asym_example(48, p, k.corrected) - 1.0);
  EXPECT_LT(g48, 1.5 * g24);
}

TEST(RhAsymptotics, ExampleValidation) {
  ExampleParams p;
  p.alpha1 = 1.2;
  EXPECT_THROW(validate_example(p), Error);
  p = ExampleParams{};
  p.b1 = 0.25;
  EXPECT_THROW(validate_example(p), Error);
}
