#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "thasym/error.hpp"
#include "thasym/th_linear.hpp"

using namespace thasym;

namespace {

SymbolPair pset_pair() {
  return make_pair_with_d(build_rational_power(0.2, 0.3, 0.3), build_d_product({{0.5, 0.7, 0.4, 1}}));
}

SymbolPair generic_pair() {
  return make_pair(multiply(build_rational_power(0.2, 0.3, cplx(0.3, 0.2)), build_reflected_rational_power(0.4, 0.6, 0.5)),
                   laurent_polynomial_symbol({{-1, cplx(0.2, 0.1)}, {0, 0.7}, {1, 0.45}, {2, -0.3}, {3, 0.1}}));
}

// Toeplitz+Hankel entries from quadrature moments
struct OracleMoments {
  SymbolPair pair;
  int r, s;
  std::map<int, cplx> phi, w;
  cplx phi_at(int k) {
    if (!phi.count(k)) phi[k] = oracle::laurent_coeff(pair.phi.eval, k);
    return phi[k];
  }
  cplx w_at(int k) {
    if (!w.count(k)) w[k] = oracle::laurent_coeff(pair.w.eval, k);
    return w[k];
  }
  cplx entry(int j, int k) { return phi_at(j - k + r) + w_at(j + k + s); }
  oracle::Matrix block(int n) {
    oracle::Matrix m(n, std::vector<cplx>(n));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m[j][k] = entry(j, k);
    return m;
  }
};

}  // namespace

TEST(ThLinear, TrivialSymbolGivesUnitDeterminants) {
  const auto mt = circle_moments(make_pair(constant_symbol(1.0), constant_symbol(0.0)), 6, 0, 1);
  for (int n = 1; n <= 5; ++n) EXPECT_LT(std::abs(th_det(mt, n).value - 1.0), 1e-14);
}

TEST(ThLinear, DeterminantsMatchLeibnizOracle) {
  for (const auto& [pair, r, s] : {std::tuple{pset_pair(), 1, 1}, std::tuple{generic_pair(), 0, 2},
                                   std::tuple{generic_pair(), -1, 0}}) {
    const auto mt = circle_moments(pair, 7, r, s);
    OracleMoments om{pair, r, s, {}, {}};
    for (int n = 1; n <= 6; ++n) {
      const cplx ref = oracle::leibniz_det(om.block(n));
      EXPECT_LT(oracle::rel(th_det(mt, n).value, ref), 1e-11) << "n=" << n << " r=" << r << " s=" << s;
    }
  }
}

TEST(ThLinear, OrthoPolyMatchesCofactorOracle) {
  const auto pair = generic_pair();
  const int r = 1, s = 1;
  const auto mt = circle_moments(pair, 7, r, s);
  OracleMoments om{pair, r, s, {}, {}};
  for (int n = 1; n <= 6; ++n) {
    const auto res = ortho_poly(mt, n);
    const cplx dn = oracle::leibniz_det(om.block(n));
    // coefficient of z^k = cofactor of the last row in the bordered determinant
    for (int k = 0; k <= n; ++k) {
      oracle::Matrix minor;
      for (int j = 0; j < n; ++j) {
        std::vector<cplx> row;
        for (int c = 0; c <= n; ++c)
          if (c != k) row.push_back(om.entry(j, c));
        minor.push_back(row);
      }
      const cplx cof = ((n + k) % 2 ? -1.0 : 1.0) * oracle::leibniz_det(minor) / dn;
      EXPECT_LT(std::abs(res.monic_coeffs[k] - cof), 1e-10 * std::max(1.0, std::abs(cof))) << n << "," << k;
    }
  }
}

TEST(ThLinear, LadderAndRelationAgree) {
  const auto pair = pset_pair();
  const auto mt = circle_moments(pair, 32, 1, 1);
  for (int n = 0; n <= 32; ++n) {
    const auto res = ortho_poly(mt, n);
    EXPECT_LT(oracle::rel(res.h_relation, res.h), 1e-9) << n;
    EXPECT_LT(oracle::rel(res.h * res.D(n), res.D(n + 1)), 1e-12) << n;
  }
}

TEST(ThLinear, OrthogonalityResidualSmall) {
  for (const auto& pair : {pset_pair(), generic_pair()}) {
    const auto mt = circle_moments(pair, 20, 1, 1);
    for (int n : {1, 5, 10, 15, 20}) {
      auto res = ortho_poly(mt, n);
      // backward-error floor: grows like cond * eps
      const double bound = std::max(1e-9, 100.0 * res.condition_estimate * 2.2e-16);
      EXPECT_LE(ortho_residual(res, pair, 1, 1), bound * std::max(1.0, std::abs(res.h))) << n;
    }
  }
}

TEST(ThLinear, ExtendedPrecisionAgrees) {
  const auto mt = circle_moments(pset_pair(), 24, 1, 1);
  for (int n : {4, 12, 24}) {
    const auto a = th_det(mt, n), b = th_det(mt, n, Precision::extended);
    EXPECT_LT(oracle::rel(a.value, b.value), 1e-10) << n;
  }
}

TEST(ThLinear, SingularMatrixFlagged) {
  // phi = 0, w = 1: rank-one Hankel block
  const auto mt = circle_moments(make_pair(constant_symbol(0.0), constant_symbol(1.0)), 4, 0, 0);
  const auto d = th_det(mt, 3);
  EXPECT_TRUE(d.singular);
  EXPECT_THROW(ortho_poly(mt, 3), Error);
}

TEST(ThLinear, CharpolyMatchesEigenvalueProduct) {
  const auto w = laurent_polynomial_symbol({{0, 1.0}, {1, cplx(0.5, 0.2)}, {2, -0.3}, {5, 0.2}, {-1, 0.4}});
  for (int n : {1, 4, 8, 12}) {
    Eigen::MatrixXcd h(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) h(j, k) = oracle::laurent_coeff(w.eval, j + k);
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
    for (cplx lam : {cplx(0.5), cplx(-1.3), cplx(0.2, 0.7), cplx(2.1), cplx(-0.4, -0.9)}) {
      cplx ref = 1.0;
      for (int i = 0; i < n; ++i) ref *= ev(i) - lam;
      const auto c = charpoly_identity(w, lam, n);
      EXPECT_LT(oracle::rel(c.det_th, ref), 1e-10) << n << " " << lam;
      EXPECT_LT(oracle::rel(c.det_direct, ref), 1e-10) << n << " " << lam;
    }
  }
}

TEST(ThLinear, YJumpsVerify) {
  const auto pair = pset_pair();
  const auto mt = circle_moments(pair, 8, 1, 1);
  const auto rn = ortho_poly(mt, 8), rm = ortho_poly(mt, 7);
  const auto rep = build_Y_and_verify(pair, rn, rm, 1, 1, {1e-3, 5e-4, 2.5e-4, 1.25e-4}, {0.3, 1.9, 4.4});
  EXPECT_LT(rep.jump_second_column, 1e-8);
  EXPECT_LT(rep.jump_first_column, 1e-12);
  EXPECT_LT(rep.normalization, 1e2);
}

TEST(ThLinear, GxRankDeficientAtOne) {
  const auto sv = rank_GXW(pset_pair());
  EXPECT_LE(sv[2], 1e-12);
  EXPECT_LE(sv[3], 1e-12);
  EXPECT_GT(sv[1], 1e-3);
}

TEST(ThLinear, MomentRangesCoverOffsets) {
  const auto mr = moment_ranges(5, 2, -1);
  EXPECT_LE(mr.phi_min, -5 + 2);
  EXPECT_GE(mr.phi_max, 5 + 2);
  EXPECT_LE(mr.w_min, -1);
  EXPECT_GE(mr.w_max, 2 * 5 - 1);
}
