#include "thasym/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thasym/error.hpp"

namespace thasym {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Mat4 inner_factor(const SideValues& v) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = -v.beta;
  m(1, 2) = 1.0 / (v.alpha_tilde * v.beta * v.alpha);
  m(2, 1) = -v.alpha_tilde;
  m(3, 3) = -v.alpha;
  return m;
}

Mat4 outer_factor(const SideValues& v) {
  Mat4 m = Mat4::Zero();
  m(0, 1) = v.beta;
  m(1, 3) = 1.0 / (v.beta * v.alpha_tilde * v.alpha);
  m(2, 2) = v.alpha_tilde;
  m(3, 0) = v.alpha;
  return m;
}

bool inner_side(Region r) { return r == Region::inside || r == Region::boundary_plus; }

}  // namespace

ModelField model_field(const SymbolPair& pair) {
  if (!pair.d) fail(ErrorKind::model_inapplicable, "model solution needs w = d*phi with d given");
  const auto unit = CircleGrid::make(1.0, 512);
  ModelField mf;
  mf.pair = pair;
  mf.involution_residual = verify_unimodular_involution(*pair.d, unit);
  if (mf.involution_residual > kInvolutionTolerance)
    fail(ErrorKind::model_inapplicable, "d d~ = 1 fails on the unit circle (residual " +
                                            std::to_string(mf.involution_residual) + ")");
  mf.alpha = szego_function(pair.phi);
  mf.beta = szego_function(*pair.d);
  mf.crho = rho_field_auto(mf.alpha, mf.beta);
  mf.alpha0 = mf.alpha.value_at_zero;
  mf.crho0 = mf.crho.density_fourier.at(0);

  Mat4 li = Mat4::Zero();
  li(0, 3) = 1.0;
  li(1, 0) = 1.0;
  li(2, 2) = 1.0 / mf.alpha0;
  li(3, 1) = mf.alpha0;
  mf.lambda_inf_inverse = li;

  Mat4 l0 = Mat4::Zero();
  l0(0, 3) = -mf.alpha0;
  l0(1, 0) = -1.0;
  l0(2, 1) = -1.0 / mf.alpha0;
  l0(3, 0) = -mf.crho0 * mf.alpha0;
  l0(3, 2) = 1.0;
  mf.lambda_at_zero = l0;
  mf.W = w_matrix();
  return mf;
}

SideValues side_values(const ModelField& mf, cplx z, Region region) {
  return {eval_szego(mf.alpha, z, region), eval_szego(mf.beta, z, region),
          eval_szego_reflected(mf.alpha, z, region), eval_cauchy(mf.crho, z, region)};
}

SzegoJumpReport szego_jump_identities(const ModelField& mf, std::size_t nodes, std::size_t probes) {
  const auto grid = CircleGrid::make(1.0, nodes);
  const AnalyticSymbol& d = *mf.pair.d;
  SzegoJumpReport rep;
  for (const cplx z : grid.nodes) {
    const cplx iz = 1.0 / z;
    const auto up = [&](const SzegoData& sd) { return eval_szego(sd, z, Region::boundary_plus); };
    const auto dn = [&](const SzegoData& sd) { return eval_szego(sd, z, Region::boundary_minus); };
    const auto tup = [&](const SzegoData& sd) { return eval_szego_reflected(sd, z, Region::boundary_plus); };
    const auto tdn = [&](const SzegoData& sd) { return eval_szego_reflected(sd, z, Region::boundary_minus); };
    rep.alpha_jump = std::max(rep.alpha_jump, std::abs(up(mf.alpha) - dn(mf.alpha) * mf.pair.phi(z)));
    rep.beta_jump = std::max(rep.beta_jump, std::abs(up(mf.beta) - dn(mf.beta) * d(z)));
    rep.alpha_tilde_jump =
        std::max(rep.alpha_tilde_jump, std::abs(tdn(mf.alpha) - tup(mf.alpha) * mf.pair.phi(iz)));
    rep.beta_tilde_jump = std::max(rep.beta_tilde_jump, std::abs(tdn(mf.beta) - tup(mf.beta) * d(iz)));
  }
  rep.beta_at_zero = eval_szego(mf.beta, 0.0, Region::inside);
  for (std::size_t j = 0; j < probes; ++j) {
    const cplx z = std::polar(0.9, 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(probes));
    rep.beta_symmetry = std::max(
        rep.beta_symmetry, std::abs(eval_szego(mf.beta, z, Region::inside) - eval_szego(mf.beta, 1.0 / z, Region::outside)));
  }
  return rep;
}

Mat4 lambda_eval(const ModelField& mf, cplx z, Region region) {
  const SideValues v = side_values(mf, z, region);
  Mat4 shift = Mat4::Identity();
  shift(1, 0) = v.crho;
  return mf.lambda_inf_inverse * shift * (inner_side(region) ? inner_factor(v) : outer_factor(v));
}

Mat4 lambda_jump(cplx phi, cplx w, cplx phi_t, cplx w_t) {
  Mat4 j = Mat4::Zero();
  j(0, 3) = -phi;
  j(1, 0) = -w / phi;
  j(1, 2) = phi_t - w * w_t / phi;
  j(2, 1) = -1.0 / phi_t;
  j(3, 0) = 1.0 / phi;
  j(3, 2) = w_t / phi;
  return j;
}

Mat4 lambda_jump(const SymbolPair& pair, cplx z) {
  const cplx iz = 1.0 / z;
  return lambda_jump(pair.phi(z), pair.w(z), pair.phi(iz), pair.w(iz));
}

ModelJumpReport verify_model_jump(const ModelField& mf, const CircleGrid& grid,
                                  const std::vector<double>& eps_list) {
  if (!grid.on_unit_circle()) fail(ErrorKind::usage, "model jump lives on the unit circle");
  ModelJumpReport rep;
  for (const cplx z : grid.nodes) {
    std::vector<Mat4> plus, minus;
    for (double e : eps_list) {
      plus.push_back(lambda_eval(mf, (1.0 - e) * z, Region::inside));
      minus.push_back(lambda_eval(mf, (1.0 + e) * z, Region::outside));
    }
    Mat4 lp, lm;
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < 4; ++k) {
        std::vector<cplx> vp, vm;
        for (std::size_t e = 0; e < eps_list.size(); ++e) {
          vp.push_back(plus[e](i, k));
          vm.push_back(minus[e](i, k));
        }
        const auto ep = richardson(eps_list, vp);
        const auto em = richardson(eps_list, vm);
        lp(i, k) = ep.value;
        lm(i, k) = em.value;
        rep.extrapolation_error = std::max({rep.extrapolation_error, ep.error_estimate, em.error_estimate});
      }
    }
    const Mat4 j = lambda_jump(mf.pair, z);
    rep.residual = std::max(rep.residual, (lp - lm * j).cwiseAbs().maxCoeff());
    rep.j23_max = std::max(rep.j23_max, std::abs(j(1, 2)));
  }
  if (rep.extrapolation_error > 1e-6) fail(ErrorKind::resolution, "epsilon extrapolation did not converge");
  return rep;
}

bool is_interior(GLabel l) {
  return l == GLabel::g12 || l == GLabel::g14 || l == GLabel::g23 || l == GLabel::g43;
}

const char* label_name(GLabel l) {
  switch (l) {
    case GLabel::g12: return "12";
    case GLabel::g14: return "14";
    case GLabel::g23: return "23";
    case GLabel::g43: return "43";
    case GLabel::g21: return "21";
    case GLabel::g32: return "32";
    case GLabel::g34: return "34";
    case GLabel::g41: return "41";
  }
  return "?";
}

std::pair<int, int> label_position(GLabel l) {
  const char* s = label_name(l);
  return {s[0] - '1', s[1] - '1'};
}

cplx g_eval(cplx z, GLabel which, const ModelField& mf) {
  const bool interior = is_interior(which);
  if (interior && !(std::abs(z) < 1.0)) fail(ErrorKind::usage, "interior g needs |z| < 1");
  if (!interior && !(std::abs(z) > 1.0)) fail(ErrorKind::usage, "exterior g needs |z| > 1");
  const SideValues v = side_values(mf, z, interior ? Region::inside : Region::outside);
  const cplx iz = 1.0 / z;
  const cplx phi = mf.pair.phi(z), w = mf.pair.w(z);
  const cplx phit = mf.pair.phi(iz), wt = mf.pair.w(iz);
  const cplx a0 = mf.alpha0;
  const double tiny = 1e-300;
  if (std::min({std::abs(phi), std::abs(phit), std::abs(v.alpha), std::abs(v.beta), std::abs(v.alpha_tilde)}) <
      tiny)
    fail(ErrorKind::division, "zero denominator in g");
  switch (which) {
    // 12, 14 and 32 follow from conjugating the lens jumps with Lambda
    case GLabel::g12: return -v.alpha / (phi * v.beta) - wt * v.crho * v.alpha * v.alpha * v.alpha_tilde * v.beta / phi;
    case GLabel::g14: return wt * v.alpha * v.alpha * v.alpha_tilde * v.beta / (phi * a0);
    case GLabel::g23: return -a0 * wt * v.beta / (phit * v.alpha_tilde);
    case GLabel::g43:
      return -a0 * a0 * (v.alpha * v.beta / phit + v.beta * wt * v.crho / (v.alpha_tilde * phit));
    case GLabel::g21: return w * v.beta / (phi * v.alpha);
    case GLabel::g32:
      return (1.0 / (a0 * phit)) *
             (v.alpha_tilde / v.beta - w * v.alpha_tilde * v.alpha_tilde * v.beta * v.alpha * v.crho);
    case GLabel::g34: return w * v.alpha_tilde * v.alpha_tilde * v.beta * v.alpha / (phit * a0 * a0);
    case GLabel::g41:
      return -(a0 / phi) * (1.0 / (v.alpha_tilde * v.beta * v.alpha * v.alpha) - w * v.beta * v.crho / v.alpha);
  }
  return 0.0;
}

ContourSpec default_contours(const ModelField& mf, std::size_t node_count) {
  const Annulus ann = mf.pair.symmetric_annulus();
  const double ri = ann.inner * (1.0 + kAnnulusMargin);
  const double ro = ann.outer * (1.0 - kAnnulusMargin);
  if (!(ri < 1.0 && ro > 1.0)) fail(ErrorKind::domain, "analyticity annulus too thin for the contours");
  return {0.5 * (1.0 + ri), 0.5 * (1.0 + ro), node_count};
}

const REntry& RTable::at(int n) const {
  auto it = entries.find(n);
  if (it == entries.end()) fail(ErrorKind::usage, "R table has no entry for n=" + std::to_string(n));
  return it->second;
}

namespace {

struct LabelSamples {
  std::vector<cplx> mu;
  std::vector<cplx> g;
};

LabelSamples sample_label(const ModelField& mf, GLabel l, double radius, std::size_t n) {
  const auto grid = CircleGrid::make(radius, n);
  LabelSamples s;
  s.mu = grid.nodes;
  s.g.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.g[j] = g_eval(grid.nodes[j], l, mf);
  return s;
}

struct Moment {
  cplx value;
  double scale;  // mean |summand|
};

Moment mean_power(const LabelSamples& s, int power) {
  cplx acc = 0.0;
  double mag = 0.0;
  for (std::size_t j = 0; j < s.mu.size(); ++j) {
    const cplx t = std::pow(s.mu[j], power) * s.g[j];
    acc += t;
    mag += std::abs(t);
  }
  const double inv = 1.0 / static_cast<double>(s.mu.size());
  return {acc * inv, mag * inv};
}

struct RawTable {
  std::map<int, REntry> entries;
  std::map<int, std::map<GLabel, double>> scales;
};

RawTable compute_table(const ModelField& mf, const std::vector<int>& n_list, const ContourSpec& cs) {
  std::map<GLabel, LabelSamples> samples;
  for (GLabel l : kInteriorLabels) samples[l] = sample_label(mf, l, cs.inner, cs.node_count);
  for (GLabel l : kExteriorLabels) samples[l] = sample_label(mf, l, cs.outer, cs.node_count);
  RawTable out;
  for (int n : n_list) {
    REntry e;
    auto& sc = out.scales[n];
    for (GLabel l : kInteriorLabels) {
      const Moment r1 = mean_power(samples[l], n);
      e.r1_at_0[l] = r1.value;
      e.rprime[l] = mean_power(samples[l], n - 1).value;
      sc[l] = r1.scale;
    }
    for (GLabel l : kExteriorLabels) {
      const Moment r1 = mean_power(samples[l], -n);
      e.r1_at_0[l] = r1.value;
      e.rprime[l] = mean_power(samples[l], -n - 1).value;
      sc[l] = r1.scale;
    }
    e.E = (2.0 / mf.alpha0) * e.r1_at_0[GLabel::g43] - mf.crho0 * e.r1_at_0[GLabel::g23];
    e.E_floor = 64.0 * kEps *
                (2.0 / std::abs(mf.alpha0) * sc[GLabel::g43] + std::abs(mf.crho0) * sc[GLabel::g23]);
    e.E_resolved = std::abs(e.E) > std::max(e.E_floor, 1e-280);
    out.entries[n] = e;
  }
  return out;
}

}  // namespace

RTable R_entries(const ModelField& mf, const std::vector<int>& n_list, std::optional<ContourSpec> contours) {
  const ContourSpec cs = contours ? *contours : default_contours(mf);
  const Annulus ann = mf.pair.symmetric_annulus();
  if (!(ann.inner < cs.inner && cs.inner < 1.0 && 1.0 < cs.outer && cs.outer < ann.outer))
    fail(ErrorKind::domain, "contour radii must satisfy " + std::to_string(ann.inner) + " < inner < 1 < outer < " +
                                std::to_string(ann.outer));
  ContourSpec fine = cs;
  fine.node_count *= 2;
  const RawTable coarse = compute_table(mf, n_list, cs);
  const RawTable dense = compute_table(mf, n_list, fine);
  RTable rt;
  rt.n_values = n_list;
  rt.contours = cs;
  for (int n : n_list) {
    const REntry& a = coarse.entries.at(n);
    const REntry& b = dense.entries.at(n);
    const auto& sc = dense.scales.at(n);
    auto check = [&](GLabel l, cplx x, cplx y) {
      const double floor = 64.0 * kEps * sc.at(l);
      const double diff = std::abs(x - y);
      if (diff > kDoublingTolerance * std::abs(y) + floor)
        fail(ErrorKind::resolution, std::string("R entry ") + label_name(l) + " changes under node doubling");
      rt.doubling_change = std::max(rt.doubling_change, diff / std::max(std::abs(y), floor));
    };
    for (const auto& [l, v] : b.r1_at_0) check(l, a.r1_at_0.at(l), v);
    for (const auto& [l, v] : b.rprime) check(l, a.rprime.at(l), v);
    rt.entries[n] = b;
  }
  return rt;
}

cplx r1_at(const ModelField& mf, const ContourSpec& cs, GLabel which, cplx z, int n) {
  const bool interior = is_interior(which);
  const double rad = interior ? cs.inner : cs.outer;
  if (std::abs(std::abs(z) - rad) < 1e-3 * rad) fail(ErrorKind::usage, "evaluation point too close to the contour");
  const LabelSamples s = sample_label(mf, which, rad, 2 * cs.node_count);
  cplx acc = 0.0;
  const int power = interior ? n : -n;
  for (std::size_t j = 0; j < s.mu.size(); ++j)
    acc += std::pow(s.mu[j], power) * s.g[j] * s.mu[j] / (s.mu[j] - z);
  return acc / static_cast<double>(s.mu.size());
}

Mat4 P_asym(int n, const ModelField& mf, const RTable& rt) {
  const REntry& e = rt.at(n);
  const cplx a0 = mf.alpha0, c0 = mf.crho0;
  auto r = [&](GLabel l) { return e.r1_at_0.at(l); };
  Mat4 p = Mat4::Zero();
  p(0, 0) = -c0 * a0 * r(GLabel::g14) - r(GLabel::g12);
  p(0, 2) = r(GLabel::g14);
  p(0, 3) = -a0;
  p(1, 0) = -1.0;
  p(1, 1) = -r(GLabel::g23) / a0;
  p(1, 3) = -a0 * r(GLabel::g21);
  p(2, 0) = -c0 * a0 * r(GLabel::g34) - r(GLabel::g32);
  p(2, 1) = -1.0 / a0;
  p(2, 2) = r(GLabel::g34);
  p(3, 0) = -c0 * a0;
  p(3, 1) = -r(GLabel::g43) / a0;
  p(3, 2) = 1.0;
  p(3, 3) = -a0 * r(GLabel::g41);
  return p;
}

CSolution solve_C_from_P(const Mat4& p) {
  // P entries with one-based names
  auto P = [&](int i, int k) { return p(i - 1, k - 1); };
  CSolution out;
  out.pivots = {P(2, 2) * P(4, 4) - P(4, 2) * P(2, 4),
                (1.0 - P(2, 1)) * P(4, 2) + P(2, 2) * P(4, 1),
                (1.0 - P(4, 3)) * P(2, 2) + P(2, 3) * P(4, 2),
                (1.0 - P(2, 1)) * P(4, 4) + P(4, 1) * P(2, 4),
                (1.0 - P(2, 1)) * (P(4, 3) - 1.0) + P(4, 1) * P(2, 3),
                (1.0 - P(4, 3)) * P(2, 4) + P(2, 3) * P(4, 4)};
  out.doubled_det = out.pivots[0] * out.pivots[0];
  const bool solvable = std::any_of(out.pivots.begin(), out.pivots.end(), [](cplx v) { return std::abs(v) > 1e-12; });
  if (!solvable) fail(ErrorKind::solvability, "all six pivots of the C-system vanish");
  const Mat4 q = p * w_matrix() - Mat4::Identity();
  Eigen::Matrix<cplx, 4, 2> a;
  a.col(0) = q.row(1).transpose();
  a.col(1) = q.row(3).transpose();
  const auto qr = a.colPivHouseholderQr();
  const Eigen::Matrix<cplx, 2, 1> x13 = qr.solve(Eigen::Matrix<cplx, 4, 1>(-q.row(0).transpose()));
  const Eigen::Matrix<cplx, 2, 1> x24 = qr.solve(Eigen::Matrix<cplx, 4, 1>(-q.row(2).transpose()));
  out.c = {x13(0), x24(0), x13(1), x24(1)};
  const double r1 = (q.row(0) + x13(0) * q.row(1) + x13(1) * q.row(3)).cwiseAbs().maxCoeff();
  const double r3 = (q.row(2) + x24(0) * q.row(1) + x24(1) * q.row(3)).cwiseAbs().maxCoeff();
  out.residual = std::max(r1, r3);
  return out;
}

namespace {
const REntry& resolved_entry(int n, const RTable& rt) {
  const REntry& e = rt.at(n);
  if (!e.E_resolved) fail(ErrorKind::asymptotic_condition, "E(n) vanishes to working precision at n=" + std::to_string(n));
  return e;
}
}  // namespace

std::pair<cplx, cplx> C24_asym(int n, const RTable& rt, const ModelField& mf) {
  const REntry& e = resolved_entry(n, rt);
  return {mf.crho0 / e.E, -2.0 / (mf.alpha0 * e.E)};
}

BEntries B_entries(int n, const RTable& rt, const ModelField& mf) {
  const REntry& e = rt.at(n);
  const cplx a0 = mf.alpha0;
  const cplx rp23 = e.rprime.at(GLabel::g23), rp43 = e.rprime.at(GLabel::g43);
  BEntries b;
  b.b12 = rp23 / a0;
  b.b32 = mf.crho0 * rp23 - rp43 / a0;
  b.b42 = -(e.r1_at_0.at(GLabel::g12) * rp23 + e.r1_at_0.at(GLabel::g14) * rp43) / (a0 * a0);
  return b;
}

cplx h_asym_rprime(int n, const RTable& rt, const ModelField& mf) {
  const REntry& e = resolved_entry(n, rt);
  const cplx den = (2.0 / mf.alpha0) * e.rprime.at(GLabel::g43) - mf.crho0 * e.rprime.at(GLabel::g23);
  if (std::abs(den) <= e.E_floor) fail(ErrorKind::asymptotic_condition, "E(n-1) vanishes to working precision");
  return -mf.alpha0 * e.E / den;
}

cplx h_asym(int n, const RTable& rt, const ModelField& mf) {
  if (!rt.has(n - 1)) return h_asym_rprime(n, rt, mf);
  const REntry& e = resolved_entry(n, rt);
  const REntry& em = resolved_entry(n - 1, rt);
  return -mf.alpha0 * e.E / em.E;
}

cplx poly_asym(cplx z, int n, Region region, const RTable& rt, const ModelField& mf) {
  const REntry& e = resolved_entry(n, rt);
  auto inner_part = [&](Region side) {
    const SideValues v = side_values(mf, z, side);
    return v.beta * (2.0 * mf.alpha0 * v.crho - mf.crho0 * mf.alpha0) / e.E;
  };
  auto outer_part = [&](Region side) {
    const SideValues v = side_values(mf, z, side);
    const cplx r21 = r1_at(mf, rt.contours, GLabel::g21, z, n);
    const cplx r41 = r1_at(mf, rt.contours, GLabel::g41, z, n);
    return v.alpha * std::pow(z, n) * (1.0 + (mf.crho0 * mf.alpha0 * r21 - 2.0 * r41) / e.E);
  };
  switch (region) {
    case Region::inside: return inner_part(Region::inside);
    case Region::outside: return outer_part(Region::outside);
    case Region::boundary_plus:
    case Region::boundary_minus:
      return inner_part(Region::boundary_plus) + outer_part(Region::boundary_minus);
  }
  return 0.0;
}

void validate_example(const ExampleParams& p) {
  if (!(0.0 < p.a && p.a < p.b && p.b < p.a1 && p.a1 < p.b1 && p.b1 < 1.0))
    fail(ErrorKind::domain, "example needs 0 < a < b < a1 < b1 < 1");
  if (!(std::abs(p.alpha1.real()) < 1.0)) fail(ErrorKind::domain, "example needs |Re alpha1| < 1");
}

SymbolPair example_pair(const ExampleParams& p) {
  validate_example(p);
  return make_pair_with_d(build_rational_power(p.a, p.b, p.alpha, 1),
                          build_d_product({RationalPowerFactor{p.a1, p.b1, p.alpha1, 1}}));
}

namespace {
struct KappaParts {
  cplx amplitude;  // Gamma(1-alpha1)(b1-a1)^alpha1 ((1-b b1)/(1-a b1))^alpha (a1/b1)^-alpha1
  cplx integral;
};

KappaParts kappa_parts(const ExampleParams& p, std::size_t order) {
  const cplx a1c = p.alpha1;
  const double lo = 1.0 / p.b1, hi = 1.0 / p.a1;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const auto rule = gauss_jacobi(order, -a1c.real(), a1c.real());
  cplx integral = 0.0;
  for (std::size_t k = 0; k < order; ++k) {
    const double x = rule.nodes[k];
    const double z = mid + half * x;
    // remaining oscillatory factor ((1-x)/(1+x))^{-i Im alpha1}
    const cplx osc = std::exp(-kI * a1c.imag() * std::log((1.0 - x) / (1.0 + x)));
    const cplx f = std::exp(a1c * std::log((z - p.b1) / (z - p.a1))) * osc * (z + p.b1) / ((z - p.b1) * z);
    integral += rule.weights[k] * f;
  }
  integral *= half;
  const cplx amp = complex_gamma(1.0 - a1c) * std::exp(a1c * std::log(p.b1 - p.a1)) *
                   std::exp(p.alpha * std::log((1.0 - p.b * p.b1) / (1.0 - p.a * p.b1))) *
                   std::exp(-a1c * std::log(p.a1 / p.b1));
  return {amp, integral};
}

cplx kappa_at_order(const ExampleParams& p, std::size_t order) {
  const auto [amp, integral] = kappa_parts(p, order);
  const cplx phase = std::exp(-kI * kPi * p.alpha1);
  return -(kI / kPi) * phase * amp * (phase * (kI / kPi) * integral - 1.0);
}

cplx kappa_corrected_at_order(const ExampleParams& p, std::size_t order) {
  const auto [amp, integral] = kappa_parts(p, order);
  const cplx jump = std::sin(kPi * p.alpha1) / kPi;
  return jump * amp * (1.0 - jump * integral);
}
}  // namespace

KappaResult kappa(const ExampleParams& p, std::size_t order) {
  validate_example(p);
  if (order < 4) fail(ErrorKind::usage, "quadrature order too small");
  KappaResult out;
  out.value = kappa_at_order(p, order);
  out.coarse = kappa_at_order(p, order / 2);
  out.change = std::abs(out.value - out.coarse) / std::max(std::abs(out.value), 1e-300);
  out.corrected = kappa_corrected_at_order(p, order);
  if (out.change > 1e-10) fail(ErrorKind::resolution, "kappa quadrature did not converge under order doubling");
  return out;
}

cplx E_asym_example(int n, const ExampleParams& p, cplx kappa_val) {
  const double nn = static_cast<double>(n);
  return kappa_val * std::exp((nn - p.alpha1) * std::log(p.b1)) * std::exp((p.alpha1 - 1.0) * std::log(nn));
}

}  // namespace thasym
