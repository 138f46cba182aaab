#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thasym/error.hpp"
#include "thasym/model.hpp"
#include "thasym/szego.hpp"

using namespace thasym;

namespace {

cplx exterior_part(cplx z) { return std::pow((z - 0.3) / (z - 0.2), 0.3); }
cplx interior_part(cplx z) { return std::pow((0.5 * z - 1.0) / (0.7 * z - 1.0), cplx(0.4, 0.1)); }

AnalyticSymbol mixed_symbol() {
  return scale(multiply(build_rational_power(0.2, 0.3, 0.3), build_reflected_rational_power(0.5, 0.7, cplx(0.4, 0.1))),
               2.5);
}

}  // namespace

TEST(CauchySzego, ClosedFormSzegoFactors) {
  // symbol = c * P * Q with P analytic outside (P(inf) = 1) and Q analytic inside (Q(0) = 1):
  // interior factor c Q, exterior factor 1/P
  const auto sd = szego_function(mixed_symbol());
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.6, 0.3), cplx(0.0, 0.85)})
    EXPECT_LT(oracle::rel(eval_szego(sd, z, Region::inside), 2.5 * interior_part(z)), 1e-12) << z;
  for (cplx z : {cplx(1.2, 0.2), cplx(-0.9, 1.1), cplx(0.0, -1.35)})
    EXPECT_LT(oracle::rel(eval_szego(sd, z, Region::outside), 1.0 / exterior_part(z)), 1e-12) << z;
  EXPECT_LT(std::abs(sd.value_at_zero - 2.5), 1e-12);
}

TEST(CauchySzego, BoundaryFactorizationHolds) {
  const auto sym = mixed_symbol();
  const auto sd = szego_function(sym);
  for (int j = 0; j < 32; ++j) {
    const cplx z = std::polar(1.0, 2.0 * kPi * (j + 0.3) / 32.0);
    const cplx plus = eval_szego(sd, z, Region::boundary_plus);
    const cplx minus = eval_szego(sd, z, Region::boundary_minus);
    EXPECT_LT(std::abs(plus - minus * sym(z)), 1e-12);
  }
}

TEST(CauchySzego, ReflectedFactorIsTildeOfFactor) {
  const auto sd = szego_function(mixed_symbol());
  const cplx z(0.4, -0.3);
  EXPECT_LT(std::abs(eval_szego_reflected(sd, z, Region::inside) - eval_szego(sd, 1.0 / z, Region::outside)), 1e-15);
}

TEST(CauchySzego, CauchyTransformMatchesQuadrature) {
  auto density = [](cplx t) { return std::exp(t) / (t - 3.0) + 1.0 / (t - cplx(0.1, 0.2)); };
  const auto grid = CircleGrid::make(1.0, 256);
  std::vector<cplx> samples;
  for (const auto& t : grid.nodes) samples.push_back(density(t));
  const auto cf = cauchy_from_samples(samples);
  auto cauchy = [&](cplx z) {
    return oracle::circle_mean([&](double th) {
      const cplx t = std::polar(1.0, th);
      return density(t) * t / (t - z);
    });
  };
  for (cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.4)})
    EXPECT_LT(std::abs(eval_cauchy(cf, z, Region::inside) - cauchy(z)), 1e-12);
  for (cplx z : {cplx(1.6, 0.1), cplx(-0.5, 1.4)})
    EXPECT_LT(std::abs(eval_cauchy(cf, z, Region::outside) - cauchy(z)), 1e-12);
}

TEST(CauchySzego, PlemeljJump) {
  auto density = [](cplx t) { return std::cos(t) + t * t / (t - 2.0); };
  const auto grid = CircleGrid::make(1.0, 256);
  std::vector<cplx> samples;
  for (const auto& t : grid.nodes) samples.push_back(density(t));
  const auto cf = cauchy_from_samples(samples);
  for (int j = 0; j < 16; ++j) {
    const cplx z = std::polar(1.0, 0.37 * j);
    const cplx jump = eval_cauchy(cf, z, Region::boundary_plus) - eval_cauchy(cf, z, Region::boundary_minus);
    EXPECT_LT(std::abs(jump - density(z)), 1e-13);
  }
}

TEST(CauchySzego, RegionChecksRejectWrongSide) {
  const auto sd = szego_function(build_rational_power(0.2, 0.3, 0.3));
  EXPECT_THROW(eval_szego(sd, cplx(1.5, 0.0), Region::inside), Error);
  EXPECT_THROW(eval_szego(sd, cplx(0.5, 0.0), Region::outside), Error);
}

TEST(CauchySzego, JumpIdentitiesForDefaultPair) {
  const auto pair = make_pair_with_d(build_rational_power(0.2, 0.3, 0.3), build_d_product({{0.5, 0.7, 0.4, 1}}));
  const auto rep = szego_jump_identities(model_field(pair));
  EXPECT_LE(rep.alpha_jump, 1e-10);
  EXPECT_LE(rep.beta_jump, 1e-10);
  EXPECT_LE(rep.alpha_tilde_jump, 1e-10);
  EXPECT_LE(rep.beta_tilde_jump, 1e-10);
  EXPECT_LE(std::abs(rep.beta_at_zero - 1.0), 1e-10);
  EXPECT_LE(rep.beta_symmetry, 1e-10);
}

TEST(CauchySzego, WindingSymbolRejected) {
  EXPECT_THROW(szego_function(laurent_polynomial_symbol({{1, 1.0}})), Error);
}
