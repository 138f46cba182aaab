#include "thasym/th_linear.hpp"

#include <algorithm>
#include <cmath>

#include "thasym/error.hpp"

namespace thasym {

namespace {

constexpr double kPivotFloor = 1e-300;
constexpr double kRcondFloor = 1e-15;

struct LuOutcome {
  cplx det;
  double min_pivot;
  double rcond;
};

template <class Real>
LuOutcome lu_det(const Eigen::MatrixXcd& m) {
  using C = std::complex<Real>;
  using M = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  const M mm = m.cast<C>();
  Eigen::PartialPivLU<M> lu(mm);
  double min_pivot = INFINITY;
  for (Eigen::Index i = 0; i < mm.rows(); ++i)
    min_pivot = std::min(min_pivot, static_cast<double>(std::abs(lu.matrixLU()(i, i))));
  const C d = lu.determinant();
  return {cplx(static_cast<double>(d.real()), static_cast<double>(d.imag())), min_pivot,
          static_cast<double>(lu.rcond())};
}

template <class Real>
std::vector<cplx> lu_solve(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& rhs, double& rcond,
                           double& min_pivot) {
  using C = std::complex<Real>;
  using M = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  using V = Eigen::Matrix<C, Eigen::Dynamic, 1>;
  const M mm = m.cast<C>();
  Eigen::PartialPivLU<M> lu(mm);
  min_pivot = INFINITY;
  for (Eigen::Index i = 0; i < mm.rows(); ++i)
    min_pivot = std::min(min_pivot, static_cast<double>(std::abs(lu.matrixLU()(i, i))));
  rcond = static_cast<double>(lu.rcond());
  std::vector<cplx> out(static_cast<std::size_t>(mm.rows()));
  if (min_pivot < kPivotFloor) return out;
  const V x = lu.solve(V(rhs.cast<C>()));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[static_cast<std::size_t>(i)] = cplx(static_cast<double>(x(i).real()), static_cast<double>(x(i).imag()));
  return out;
}

std::vector<cplx> solve_checked(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& rhs, Precision prec,
                                double& rcond) {
  double min_pivot = 0.0;
  auto x = prec == Precision::extended ? lu_solve<long double>(a, rhs, rcond, min_pivot)
                                       : lu_solve<double>(a, rhs, rcond, min_pivot);
  if (min_pivot < kPivotFloor || rcond < kRcondFloor)
    fail(ErrorKind::existence, "D_n = 0 or ill-conditioned beyond threshold (condition estimate " +
                                   std::to_string(rcond > 0.0 ? 1.0 / rcond : INFINITY) + ")");
  return x;
}

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::size_t pow2_at_least(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

MomentRanges moment_ranges(int n_max, int r, int s) {
  return {r - n_max - 1, r + n_max + 1, s, 2 * n_max + s + 1};
}

MomentTable circle_moments(const SymbolPair& pair, int n_max, int r, int s) {
  if (n_max < 0) fail(ErrorKind::usage, "n_max must be nonnegative");
  const auto rg = moment_ranges(n_max, r, s);
  MomentTable mt;
  mt.phi = fourier_coeffs_auto(pair.phi, rg.phi_min, rg.phi_max);
  mt.w = fourier_coeffs_auto(pair.w, rg.w_min, rg.w_max);
  mt.r = r;
  mt.s = s;
  mt.n_max = n_max;
  mt.source = MomentSource::circle;
  return mt;
}

Eigen::MatrixXcd th_matrix(const MomentTable& mt, int n) {
  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a(j, k) = mt.phi.at(j - k + mt.r) + mt.w.at(j + k + mt.s);
  return a;
}

DetResult dense_det(const Eigen::MatrixXcd& m, Precision prec) {
  DetResult out;
  if (m.rows() == 0) {
    out.value = 1.0;
    out.rcond = 1.0;
    return out;
  }
  const auto lu = prec == Precision::extended ? lu_det<long double>(m) : lu_det<double>(m);
  out.rcond = lu.rcond;
  if (lu.min_pivot < kPivotFloor) {
    out.singular = true;
    out.value = 0.0;
  } else {
    out.value = lu.det;
  }
  return out;
}

DetResult th_det(const MomentTable& mt, int n, Precision prec) {
  if (n < 0 || n > mt.n_max + 1) fail(ErrorKind::usage, "determinant size outside moment table");
  return dense_det(th_matrix(mt, n), prec);
}

cplx OrthoResult::D(int k) const {
  if (k == 0) return 1.0;
  return D_ladder.at(static_cast<std::size_t>(k - 1));
}

cplx OrthoResult::eval(cplx z) const { return horner(monic_coeffs, z); }

OrthoResult ortho_poly(const MomentTable& mt, int n, Precision prec) {
  if (n < 0 || n > mt.n_max) fail(ErrorKind::usage, "polynomial degree outside moment table");
  OrthoResult res;
  res.n = n;
  res.monic_coeffs.assign(static_cast<std::size_t>(n) + 1, 0.0);
  res.monic_coeffs[static_cast<std::size_t>(n)] = 1.0;
  if (n > 0) {
    const Eigen::MatrixXcd a = th_matrix(mt, n);
    Eigen::VectorXcd rhs(n);
    for (int j = 0; j < n; ++j) rhs(j) = -(mt.phi.at(j - n + mt.r) + mt.w.at(j + n + mt.s));
    double rcond = 1.0;
    const auto x = solve_checked(a, rhs, prec, rcond);
    Eigen::VectorXcd xv(n);
    for (int j = 0; j < n; ++j) {
      xv(j) = x[static_cast<std::size_t>(j)];
      res.monic_coeffs[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
    }
    const double scale = a.cwiseAbs().rowwise().sum().maxCoeff() * xv.cwiseAbs().maxCoeff() +
                         rhs.cwiseAbs().maxCoeff();
    res.solve_residual = (a * xv - rhs).cwiseAbs().maxCoeff() / scale;
    res.condition_estimate = 1.0 / rcond;
    res.ill_conditioned = res.condition_estimate > kConditionWarning;
  }
  res.D_ladder.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n + 1; ++k) res.D_ladder[static_cast<std::size_t>(k - 1)] = th_det(mt, k, prec).value;
  if (res.D(n) == cplx(0.0, 0.0)) fail(ErrorKind::existence, "D_n vanishes");
  res.h = res.D(n + 1) / res.D(n);
  cplx hr = 0.0;
  for (int j = 0; j <= n; ++j)
    hr += res.monic_coeffs[static_cast<std::size_t>(j)] * (mt.phi.at(n - j + mt.r) + mt.w.at(j + n + mt.s));
  res.h_relation = hr;
  return res;
}

std::vector<cplx> y21_coefficients(const MomentTable& mt, int n, Precision prec) {
  if (n < 1 || n > mt.n_max) fail(ErrorKind::usage, "degree outside moment table");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(n - 1) = -1.0;
  double rcond = 1.0;
  return solve_checked(th_matrix(mt, n), rhs, prec, rcond);
}

std::size_t pair_node_count(const SymbolPair& pair, int n) {
  std::size_t need = std::max<std::size_t>(1024, pow2_at_least(static_cast<std::size_t>(8 * (n + 4))));
  need = std::max(need, resolve_node_count(pair.phi, 1.0, kTailTolerance, need));
  return std::max(need, resolve_node_count(pair.w, 1.0, kTailTolerance, need));
}

double ortho_residual(OrthoResult& res, const SymbolPair& pair, int r, int s) {
  const auto grid = CircleGrid::make(1.0, pair_node_count(pair, res.n));
  const double inv = 1.0 / static_cast<double>(grid.node_count);
  std::vector<cplx> p(grid.node_count), phi(grid.node_count), wt(grid.node_count);
  for (std::size_t j = 0; j < grid.node_count; ++j) {
    const cplx z = grid.nodes[j];
    p[j] = res.eval(z);
    phi[j] = pair.phi(z);
    wt[j] = pair.w(1.0 / z);
  }
  double worst = 0.0;
  for (int k = 0; k <= res.n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < grid.node_count; ++j) {
      const cplx z = grid.nodes[j];
      acc += p[j] * (std::pow(z, -k - r) * phi[j] + std::pow(z, k + s) * wt[j]);
    }
    acc *= inv;
    if (k == res.n) acc -= res.h;
    worst = std::max(worst, std::abs(acc));
  }
  res.ortho_residual = worst;
  return worst;
}

std::vector<cplx> y_density(const SymbolPair& pair, const std::function<cplx(cplx)>& q, int r, int s,
                            const CircleGrid& grid) {
  std::vector<cplx> g(grid.node_count);
  for (std::size_t j = 0; j < grid.node_count; ++j) {
    const cplx z = grid.nodes[j];
    const cplx iz = 1.0 / z;
    g[j] = std::pow(z, s - 1) * pair.w(iz) * q(z) + std::pow(z, r - 1) * pair.phi(iz) * q(iz);
  }
  return g;
}

YJumpReport build_Y_and_verify(const SymbolPair& pair, const OrthoResult& res_n, const OrthoResult& res_nm1,
                               int r, int s, const std::vector<double>& eps_list,
                               const std::vector<double>& angles) {
  if (res_nm1.n + 1 != res_n.n) fail(ErrorKind::usage, "need orthogonal polynomials of degree n and n-1");
  if (res_nm1.h == cplx(0.0, 0.0)) fail(ErrorKind::existence, "h_{n-1} vanishes");
  const int n = res_n.n;
  const cplx hm1 = res_nm1.h;
  const std::function<cplx(cplx)> q1 = [&](cplx z) { return res_n.eval(z); };
  const std::function<cplx(cplx)> q2 = [&](cplx z) { return -res_nm1.eval(z) / hm1; };
  const auto grid = CircleGrid::make(1.0, pair_node_count(pair, n));
  const CauchyField c1 = cauchy_from_samples(y_density(pair, q1, r, s, grid));
  const CauchyField c2 = cauchy_from_samples(y_density(pair, q2, r, s, grid));

  YJumpReport rep;
  for (double th : angles) {
    const cplx z = std::polar(1.0, th);
    const cplx iz = 1.0 / z;
    std::array<std::vector<cplx>, 4> plus, minus;  // Y11, Y21, Y12, Y22 at (1 -/+ eps) z
    for (double e : eps_list) {
      const cplx zp = (1.0 - e) * z, zm = (1.0 + e) * z;
      plus[0].push_back(q1(zp));
      plus[1].push_back(q2(zp));
      plus[2].push_back(eval_cauchy(c1, zp, Region::inside));
      plus[3].push_back(eval_cauchy(c2, zp, Region::inside));
      minus[0].push_back(q1(zm));
      minus[1].push_back(q2(zm));
      minus[2].push_back(eval_cauchy(c1, zm, Region::outside));
      minus[3].push_back(eval_cauchy(c2, zm, Region::outside));
    }
    std::array<cplx, 4> yp, ym;
    for (int i = 0; i < 4; ++i) {
      const auto ep = richardson(eps_list, plus[static_cast<std::size_t>(i)]);
      const auto em = richardson(eps_list, minus[static_cast<std::size_t>(i)]);
      yp[static_cast<std::size_t>(i)] = ep.value;
      ym[static_cast<std::size_t>(i)] = em.value;
      rep.extrapolation_error = std::max({rep.extrapolation_error, ep.error_estimate, em.error_estimate});
    }
    const cplx wt = pair.w(iz), pt = pair.phi(iz);
    const cplx zs = std::pow(z, s - 1), zr = std::pow(z, r - 1);
    rep.jump_first_column =
        std::max({rep.jump_first_column, std::abs(yp[0] - ym[0]), std::abs(yp[1] - ym[1])});
    const cplx j12 = yp[2] - ym[2] - zs * wt * ym[0] - zr * pt * q1(iz);
    const cplx j22 = yp[3] - ym[3] - zs * wt * ym[1] - zr * pt * q2(iz);
    rep.jump_second_column = std::max({rep.jump_second_column, std::abs(j12), std::abs(j22)});
  }
  if (rep.extrapolation_error > 1e-4 * std::max(1.0, rep.jump_second_column + 1.0))
    fail(ErrorKind::resolution, "epsilon extrapolation did not converge");
  const cplx zbig(1e3, 0.0);
  rep.normalization = std::abs(res_n.eval(zbig) / std::pow(zbig, n) - 1.0) * std::abs(zbig);
  rep.y21_leading_error = std::abs(-1.0 / hm1 - (-res_nm1.monic_coeffs.back() / hm1));
  return rep;
}

CValues exact_C(const SymbolPair& pair, const OrthoResult& res_n, const OrthoResult& res_nm1, int r, int s) {
  if (res_nm1.n + 1 != res_n.n) fail(ErrorKind::usage, "need orthogonal polynomials of degree n and n-1");
  if (res_nm1.h == cplx(0.0, 0.0)) fail(ErrorKind::existence, "h_{n-1} vanishes");
  const cplx hm1 = res_nm1.h;
  const auto grid = CircleGrid::make(1.0, pair_node_count(pair, res_n.n));
  const auto mean = [](const std::vector<cplx>& v) {
    cplx acc = 0.0;
    for (const auto& x : v) acc += x;
    return acc / static_cast<double>(v.size());
  };
  CValues c;
  c.c1 = res_n.eval(0.0);
  c.c2 = -res_nm1.eval(0.0) / hm1;
  c.c3 = mean(y_density(pair, [&](cplx z) { return res_n.eval(z); }, r, s, grid));
  c.c4 = mean(y_density(pair, [&](cplx z) { return -res_nm1.eval(z) / hm1; }, r, s, grid));
  return c;
}

CharpolyResult charpoly_identity(const AnalyticSymbol& w, cplx lambda, int n) {
  if (n < 1 || n > 16) fail(ErrorKind::usage, "charpoly identity sized for 1 <= n <= 16");
  const auto wc = fourier_coeffs_auto(w, 0, 2 * n + 1);
  Eigen::MatrixXcd h(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) h(j, k) = wc.at(j + k);
  h -= lambda * Eigen::MatrixXcd::Identity(n, n);
  CharpolyResult out;
  out.det_direct = dense_det(h).value;
  const auto mt = circle_moments(make_pair(constant_symbol(-lambda), w), n, 0, 0);
  out.det_th = th_det(mt, n).value;
  return out;
}

Mat4 w_matrix() {
  Mat4 m = Mat4::Zero();
  m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

Mat4 gx_jump(const SymbolPair& pair, cplx z) {
  const cplx iz = 1.0 / z;
  Mat4 g = Mat4::Identity();
  g(0, 2) = pair.w(iz);
  g(0, 3) = -pair.phi(z);
  g(1, 2) = pair.phi(iz);
  g(1, 3) = -pair.w(z);
  return g;
}

std::array<double, 4> singular_values(const Mat4& m) {
  Eigen::JacobiSVD<Mat4> svd(m);
  const auto sv = svd.singularValues();
  return {sv(0), sv(1), sv(2), sv(3)};
}

std::array<double, 4> rank_GXW(const SymbolPair& pair) {
  return singular_values(gx_jump(pair, 1.0) * w_matrix() - Mat4::Identity());
}

}  // namespace thasym
