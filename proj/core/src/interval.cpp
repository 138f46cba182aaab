#include "thasym/interval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "thasym/error.hpp"

namespace thasym {

namespace {

cplx legendre_integral(const std::function<cplx(double)>& f, double a, double b, const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
  return acc * half;
}

const QuadratureRule& cached_legendre(std::size_t order) {
  thread_local std::map<std::size_t, QuadratureRule> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order)).first;
  return it->second;
}

// Composite Gauss-Legendre on panels that shrink geometrically toward x0,
// the smallest panel comparable to the distance from the cut.
cplx graded_integral(const std::function<cplx(double)>& f, double a, double b, double x0, double dist,
                     const QuadratureRule& panel) {
  std::vector<double> cuts{a, b, x0};
  for (double h = std::max(dist, 1e-14); h < b - a; h *= 2.0) {
    if (x0 - h > a) cuts.push_back(x0 - h);
    if (x0 + h < b) cuts.push_back(x0 + h);
  }
  std::sort(cuts.begin(), cuts.end());
  cplx acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) acc += legendre_integral(f, cuts[i], cuts[i + 1], panel);
  return acc;
}

double distance_to_segment(cplx z, double a, double b) {
  const double x = std::clamp(z.real(), a, b);
  return std::abs(z - cplx(x, 0.0));
}

}  // namespace

void validate_interval_weight(const IntervalWeight& iw) {
  if (!iw.w) fail(ErrorKind::usage, "interval weight has no evaluator");
  if (!(0.0 < iw.a && iw.a < iw.b && iw.b < 1.0)) fail(ErrorKind::domain, "interval weight needs 0 < a < b < 1");
  if (iw.order < 8) fail(ErrorKind::usage, "quadrature order too small");
  for (int j = 0; j < 200; ++j) {
    const double x = iw.a + (iw.b - iw.a) * j / 199.0;
    const cplx v = iw.w(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorKind::domain, "interval weight not finite at x=" + std::to_string(x));
  }
}

cplx interval_cauchy(const std::function<cplx(double)>& g, double a, double b, cplx z, std::size_t order) {
  const double dist = distance_to_segment(z, a, b);
  if (dist < kCutRefusal) fail(ErrorKind::domain, "evaluation point within 1e-8 of the interval");
  if (dist >= 0.25 * (b - a))
    return legendre_integral([&](double t) { return g(t) / (t - z); }, a, b, cached_legendre(order));
  // subtract the value at the nearest point of the cut, integrate the rest adaptively
  const double x0 = std::clamp(z.real(), a, b);
  const cplx g0 = g(x0);
  const auto rest = [&](double t) { return (g(t) - g0) / (t - z); };
  const cplx smooth = graded_integral(rest, a, b, x0, dist, cached_legendre(24));
  return smooth + g0 * (std::log(cplx(b, 0.0) - z) - std::log(cplx(a, 0.0) - z));
}

FourierCoeffs interval_moments(const IntervalWeight& iw, int k_min, int k_max) {
  validate_interval_weight(iw);
  if (k_max < k_min) fail(ErrorKind::usage, "empty moment range");
  const auto& lo = cached_legendre(iw.order);
  const auto& hi = cached_legendre(2 * iw.order);
  FourierCoeffs fc;
  fc.k_min = k_min;
  fc.k_max = k_max;
  fc.node_count = 2 * iw.order;
  for (int k = k_min; k <= k_max; ++k) {
    const auto f = [&](double x) { return std::pow(x, k) * iw.w(x); };
    const cplx vl = legendre_integral(f, iw.a, iw.b, lo);
    const cplx vh = legendre_integral(f, iw.a, iw.b, hi);
    const double scale =
        std::abs(legendre_integral([&](double x) { return cplx(std::abs(f(x)), 0.0); }, iw.a, iw.b, hi));
    const double diff = std::abs(vh - vl);
    if (diff > kMomentDoublingTolerance * std::max(scale, 1e-300))
      fail(ErrorKind::resolution, "interval moment " + std::to_string(k) + " changes under order doubling");
    fc.tail_bound = std::max(fc.tail_bound, diff / std::max(scale, 1e-300));
    fc.values.push_back(vh);
  }
  return fc;
}

MomentTable interval_moment_table(const AnalyticSymbol& phi, const IntervalWeight& iw, int n_max, int r) {
  if (n_max < 0) fail(ErrorKind::usage, "n_max must be nonnegative");
  const auto rg = moment_ranges(n_max, r, iw.s);
  MomentTable mt;
  mt.phi = fourier_coeffs_auto(phi, rg.phi_min, rg.phi_max);
  mt.w = interval_moments(iw, rg.w_min, rg.w_max);
  mt.r = r;
  mt.s = iw.s;
  mt.n_max = n_max;
  mt.source = MomentSource::interval;
  return mt;
}

OrthoResult interval_ortho(const AnalyticSymbol& phi, const IntervalWeight& iw, int n, int r, Precision prec) {
  return ortho_poly(interval_moment_table(phi, iw, n, r), n, prec);
}

double interval_ortho_residual(OrthoResult& res, const AnalyticSymbol& phi, const IntervalWeight& iw, int r) {
  const std::size_t nodes =
      resolve_node_count(phi, 1.0, kTailTolerance, std::max<std::size_t>(1024, 8 * (res.n + 4)));
  const auto grid = CircleGrid::make(1.0, nodes);
  const auto& rule = cached_legendre(2 * iw.order);
  double worst = 0.0;
  for (int k = 0; k <= res.n; ++k) {
    const cplx line = legendre_integral(
        [&](double x) { return res.eval(x) * std::pow(x, k + iw.s) * iw.w(x); }, iw.a, iw.b, rule);
    cplx circ = 0.0;
    for (const cplx z : grid.nodes) circ += res.eval(z) * std::pow(z, -k - r) * phi(z);
    circ /= static_cast<double>(nodes);
    cplx total = line + circ;
    if (k == res.n) total -= res.h;
    worst = std::max(worst, std::abs(total));
  }
  res.ortho_residual = worst;
  return worst;
}

cplx UField::u(cplx z) const {
  if (z == cplx(0.0, 0.0)) return 0.0;
  const int s = iw.s;
  const auto g = [this, s](double t) { return std::pow(t, s - 1) * iw.w(t); };
  return z * interval_cauchy(g, iw.a, iw.b, z, iw.order);
}

cplx UField::u_tilde(cplx z) const {
  if (z == cplx(0.0, 0.0)) fail(ErrorKind::division, "u~ evaluated at the origin; use its limit");
  return u(1.0 / z);
}

UField u_field(const IntervalWeight& iw) {
  validate_interval_weight(iw);
  return UField{iw};
}

namespace {

JumpCheck extrapolated_jump(const std::function<cplx(double)>& gap, const std::vector<double>& eps_list,
                            cplx expected) {
  std::vector<cplx> vals;
  for (double e : eps_list) vals.push_back(gap(e));
  const auto ex = richardson(eps_list, vals);
  JumpCheck out{std::abs(ex.value - expected), ex.error_estimate};
  if (out.extrapolation_error > 1e-4 * std::max(1.0, std::abs(expected)))
    fail(ErrorKind::resolution, "epsilon extrapolation of the u jump did not converge");
  return out;
}

}  // namespace

JumpCheck verify_u_jump(const UField& uf, double x, const std::vector<double>& eps_list) {
  if (!(uf.iw.a < x && x < uf.iw.b)) fail(ErrorKind::usage, "x must lie inside (a, b)");
  const auto gap = [&](double e) { return uf.u(cplx(x, e)) - uf.u(cplx(x, -e)); };
  return extrapolated_jump(gap, eps_list, 2.0 * kPi * kI * std::pow(x, uf.iw.s) * uf.iw.w(x));
}

JumpCheck verify_u_tilde_jump(const UField& uf, double y, const std::vector<double>& eps_list) {
  if (!(1.0 / uf.iw.b < y && y < 1.0 / uf.iw.a)) fail(ErrorKind::usage, "y must lie inside (1/b, 1/a)");
  const auto gap = [&](double e) { return uf.u_tilde(cplx(y, e)) - uf.u_tilde(cplx(y, -e)); };
  return extrapolated_jump(gap, eps_list, -2.0 * kPi * kI * std::pow(y, -uf.iw.s) * uf.iw.w(1.0 / y));
}

ModelPairReport model_pair(const AnalyticSymbol& phi, const UField& uf, std::size_t nodes) {
  AnalyticSymbol w_eff;
  const UField captured = uf;
  w_eff.eval = [captured](cplx z) -> cplx {
    if (z == cplx(0.0, 0.0)) fail(ErrorKind::domain, "-u~ has no finite evaluation at the origin here");
    return -captured.u_tilde(z);
  };
  w_eff.inner_radius = 1e-6;
  w_eff.outer_radius = 1.0 / uf.iw.b;
  w_eff.label = "-u~[" + uf.iw.label + "]";
  ModelPairReport rep;
  rep.pair = make_pair(phi, w_eff);
  const auto grid = CircleGrid::make(1.0, nodes);
  double peak = 0.0;
  for (const cplx z : grid.nodes) {
    const cplx pp = phi(z) * phi(1.0 / z);
    peak = std::max(peak, std::abs(pp));
    rep.residual = std::max(rep.residual, std::abs(pp - uf.u(z) * uf.u_tilde(z)));
  }
  rep.normalized = rep.residual / std::max(peak, 1e-300);
  return rep;
}

Mat4 theta_jump(cplx phi, cplx phi_t, cplx u, cplx u_t) {
  Mat4 j = Mat4::Zero();
  j(0, 3) = -phi;
  j(1, 0) = u_t / phi;
  j(1, 2) = phi_t - u * u_t / phi;
  j(2, 1) = -1.0 / phi_t;
  j(3, 0) = 1.0 / phi;
  j(3, 2) = -u / phi;
  return j;
}

double theta_lambda_gap(const AnalyticSymbol& phi, const UField& uf, const std::vector<cplx>& points) {
  double gap = 0.0;
  for (const cplx z : points) {
    const cplx p = phi(z), pt = phi(1.0 / z), u = uf.u(z), ut = uf.u_tilde(z);
    const Mat4 jt = theta_jump(p, pt, u, ut);
    const Mat4 jl = lambda_jump(p, -ut, pt, -u);
    gap = std::max(gap, (jt - jl).cwiseAbs().maxCoeff());
  }
  return gap;
}

IntervalYReport interval_Y_verify(const AnalyticSymbol& phi, const IntervalWeight& iw, const OrthoResult& res_n,
                                  const OrthoResult& res_nm1, int r, const std::vector<double>& eps_list,
                                  const std::vector<double>& angles, const std::vector<double>& xs) {
  if (res_nm1.n + 1 != res_n.n) fail(ErrorKind::usage, "need orthogonal polynomials of degree n and n-1");
  if (res_nm1.h == cplx(0.0, 0.0)) fail(ErrorKind::existence, "h_{n-1} vanishes");
  validate_interval_weight(iw);
  const int n = res_n.n;
  const cplx hm1 = res_nm1.h;
  const std::function<cplx(cplx)> q1 = [&](cplx z) { return res_n.eval(z); };
  const std::function<cplx(cplx)> q2 = [&](cplx z) { return -res_nm1.eval(z) / hm1; };
  const std::size_t nodes =
      resolve_node_count(phi, 1.0, kTailTolerance, std::max<std::size_t>(1024, 8 * (n + 4)));
  const auto grid = CircleGrid::make(1.0, nodes);
  const auto circle_density = [&](const std::function<cplx(cplx)>& q) {
    std::vector<cplx> f(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
      const cplx iz = 1.0 / grid.nodes[j];
      f[j] = phi(iz) * std::pow(grid.nodes[j], r - 1) * q(iz);
    }
    return cauchy_from_samples(f);
  };
  const CauchyField c1 = circle_density(q1), c2 = circle_density(q2);
  const auto second_column = [&](const std::function<cplx(cplx)>& q, const CauchyField& cf, cplx z,
                                 Region side) {
    const auto g = [&](double t) { return q(t) * std::pow(t, iw.s) * iw.w(t); };
    return interval_cauchy(g, iw.a, iw.b, z, iw.order) + eval_cauchy(cf, z, side);
  };

  IntervalYReport rep;
  const auto extrap = [&](const std::vector<cplx>& v) {
    const auto ex = richardson(eps_list, v);
    for (const cplx& x : v) rep.value_scale = std::max(rep.value_scale, std::abs(x));
    rep.extrapolation_error = std::max(rep.extrapolation_error, ex.error_estimate);
    return ex.value;
  };

  for (double th : angles) {
    const cplx z = std::polar(1.0, th);
    const cplx iz = 1.0 / z;
    std::vector<cplx> p12, m12, p22, m22, d11, d21;
    for (double e : eps_list) {
      const cplx zp = (1.0 - e) * z, zm = (1.0 + e) * z;
      p12.push_back(second_column(q1, c1, zp, Region::inside));
      m12.push_back(second_column(q1, c1, zm, Region::outside));
      p22.push_back(second_column(q2, c2, zp, Region::inside));
      m22.push_back(second_column(q2, c2, zm, Region::outside));
      d11.push_back(q1(zp) - q1(zm));
      d21.push_back(q2(zp) - q2(zm));
    }
    const cplx factor = std::pow(z, r - 1) * phi(iz);
    rep.circle_jump = std::max({rep.circle_jump, std::abs(extrap(p12) - extrap(m12) - factor * q1(iz)),
                                std::abs(extrap(p22) - extrap(m22) - factor * q2(iz))});
    rep.first_column_jump = std::max({rep.first_column_jump, std::abs(extrap(d11)), std::abs(extrap(d21))});
  }
  for (double x : xs) {
    if (!(iw.a < x && x < iw.b)) fail(ErrorKind::usage, "interval probe must lie inside (a, b)");
    std::vector<cplx> p12, m12, p22, m22;
    for (double e : eps_list) {
      const cplx zp(x, e), zm(x, -e);
      p12.push_back(second_column(q1, c1, zp, Region::inside));
      m12.push_back(second_column(q1, c1, zm, Region::inside));
      p22.push_back(second_column(q2, c2, zp, Region::inside));
      m22.push_back(second_column(q2, c2, zm, Region::inside));
    }
    const cplx factor = 2.0 * kPi * kI * std::pow(x, iw.s) * iw.w(x);
    rep.interval_jump = std::max({rep.interval_jump, std::abs(extrap(p12) - extrap(m12) - factor * q1(x)),
                                  std::abs(extrap(p22) - extrap(m22) - factor * q2(x))});
  }
  if (rep.extrapolation_error > 1e-6 * std::max(1.0, rep.value_scale))
    fail(ErrorKind::resolution, "epsilon extrapolation did not converge");
  return rep;
}

}  // namespace thasym
