#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thasym/error.hpp"
#include "thasym/interval.hpp"

using namespace thasym;

namespace {

IntervalWeight unit_weight(int s = 0) {
  IntervalWeight iw;
  iw.w = [](double) { return cplx(1.0); };
  iw.a = 0.5;
  iw.b = 0.7;
  iw.s = s;
  iw.label = "unit";
  return iw;
}

IntervalWeight exp_weight() {
  IntervalWeight iw = unit_weight();
  iw.w = [](double x) { return cplx(std::exp(x), 0.3 * x); };
  return iw;
}

AnalyticSymbol pset_phi() { return build_rational_power(0.2, 0.3, 0.3); }

}  // namespace

TEST(IntervalHankel, MomentsOfUnitWeightClosedForm) {
  const auto m = interval_moments(unit_weight(), -3, 12);
  for (int k = -3; k <= 12; ++k) {
    const double exact = k == -1 ? std::log(0.7 / 0.5) : (std::pow(0.7, k + 1) - std::pow(0.5, k + 1)) / (k + 1);
    EXPECT_LT(std::abs(m.at(k) - exact), 1e-15) << k;
  }
}

TEST(IntervalHankel, MomentsMatchAdaptiveQuadrature) {
  const auto iw = exp_weight();
  const auto m = interval_moments(iw, 0, 20);
  for (int k : {0, 5, 20})
    EXPECT_LT(oracle::rel(m.at(k), oracle::real_integral([&](double x) { return std::pow(x, k) * iw.w(x); }, 0.5, 0.7)),
              1e-13);
}

TEST(IntervalHankel, CauchyIntegralNearCut) {
  auto g = [](double t) { return cplx(std::cos(t), t); };
  for (cplx z : {cplx(0.6, 1e-3), cplx(0.55, -1e-5), cplx(0.9, 0.2), cplx(0.7 + 1e-4, 1e-4)}) {
    const cplx val = interval_cauchy(g, 0.5, 0.7, z);
    // subtract the pole so the oracle integrand is smooth
    const cplx ref = oracle::real_integral([&](double t) { return (g(t) - std::cos(z) - kI * z) / (t - z); }, 0.5, 0.7) +
                     (std::cos(z) + kI * z) * (std::log(0.7 - z) - std::log(0.5 - z));
    EXPECT_LT(oracle::rel(val, ref), 1e-11) << z;
  }
  EXPECT_THROW(interval_cauchy(g, 0.5, 0.7, cplx(0.6, 1e-9)), Error);
}

TEST(IntervalHankel, UClosedFormForUnitWeight) {
  // z int 1/(t (t - z)) dt = log((b - z)/(a - z)) - log(b/a)
  const UField uf = u_field(unit_weight());
  for (cplx z : {cplx(0.3, 0.4), cplx(2.0, 0.0), cplx(-1.0, 0.5)}) {
    const cplx ref = std::log((0.7 - z) / (0.5 - z)) - std::log(0.7 / 0.5);
    EXPECT_LT(std::abs(uf.u(z) - ref), 1e-13) << z;
  }
  EXPECT_EQ(uf.u(0.0), cplx(0.0));
}

TEST(IntervalHankel, UnitWeightJumpAtSixTenths) {
  EXPECT_LE(verify_u_jump(u_field(unit_weight(1)), 0.6, {1e-3, 5e-4, 2.5e-4}).residual, 1e-7);
  EXPECT_LE(verify_u_tilde_jump(u_field(unit_weight(1)), 1.0 / 0.6, {1e-3, 5e-4, 2.5e-4}).residual, 1e-7);
}

TEST(IntervalHankel, PlemeljJumps) {
  // off-centre points carry a large third-order term; four levels remove it
  const std::vector<double> eps{1e-3, 5e-4, 2.5e-4, 1.25e-4};
  for (const auto& iw : {unit_weight(), exp_weight(), unit_weight(2)}) {
    const UField uf = u_field(iw);
    for (double t : {0.25, 0.5, 0.75}) {
      const double x = iw.a + t * (iw.b - iw.a);
      EXPECT_LE(verify_u_jump(uf, x, eps).residual, 1e-6) << iw.label << " " << x;
      EXPECT_LE(verify_u_tilde_jump(uf, 1.0 / x, eps).residual, 1e-6) << iw.label << " " << x;
    }
  }
}

TEST(IntervalHankel, LadderAndOrthogonality) {
  const auto phi = pset_phi();
  for (const auto& iw : {unit_weight(), exp_weight()}) {
    const auto mt = interval_moment_table(phi, iw, 12, 0);
    for (int n = 0; n <= 12; ++n) {
      auto res = ortho_poly(mt, n);
      EXPECT_LT(oracle::rel(res.h_relation, res.h), 1e-9) << n;
      EXPECT_LE(interval_ortho_residual(res, phi, iw, 0), 1e-10 * std::max(1.0, std::abs(res.h))) << n;
    }
  }
}

TEST(IntervalHankel, DeterminantsMatchLeibniz) {
  const auto phi = pset_phi();
  const auto iw = exp_weight();
  const auto mt = interval_moment_table(phi, iw, 6, 1);
  for (int n = 1; n <= 5; ++n) {
    oracle::Matrix m(n, std::vector<cplx>(n));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        m[j][k] = oracle::laurent_coeff(phi.eval, j - k + 1) +
                  oracle::real_integral([&](double x) { return std::pow(x, j + k) * iw.w(x); }, 0.5, 0.7);
    EXPECT_LT(oracle::rel(th_det(mt, n).value, oracle::leibniz_det(m)), 1e-11) << n;
  }
}

TEST(IntervalHankel, ThetaMatchesLambdaUnderSubstitution) {
  std::vector<cplx> pts;
  for (int j = 0; j < 16; ++j) pts.push_back(std::polar(1.0, 2.399963229728653 * (j + 1)));
  EXPECT_LE(theta_lambda_gap(pset_phi(), u_field(exp_weight()), pts), 1e-12);
}

TEST(IntervalHankel, ModelPairDetectsGenericWeight) {
  const auto rep = model_pair(pset_phi(), u_field(unit_weight()));
  EXPECT_GT(rep.normalized, 1e-3);
}

TEST(IntervalHankel, YJumpsAcrossCircleAndCut) {
  const auto phi = pset_phi();
  const auto iw = unit_weight();
  const auto mt = interval_moment_table(phi, iw, 6, 0);
  const auto rep = interval_Y_verify(phi, iw, ortho_poly(mt, 6), ortho_poly(mt, 5), 0, {1e-3, 5e-4, 2.5e-4, 1.25e-4},
                                     {0.3, 2.2}, {0.55, 0.65});
  const double scale = std::max(1.0, rep.value_scale);
  EXPECT_LE(rep.circle_jump / scale, 1e-6);
  EXPECT_LE(rep.interval_jump / scale, 1e-6);
}

TEST(IntervalHankel, RejectsBadWeights) {
  IntervalWeight iw = unit_weight();
  iw.a = 0.8;
  EXPECT_THROW(validate_interval_weight(iw), Error);
  iw = unit_weight();
  iw.b = 1.2;
  EXPECT_THROW(validate_interval_weight(iw), Error);
}
