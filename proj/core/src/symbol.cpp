#include "thasym/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thasym/error.hpp"

namespace thasym {

namespace {

constexpr double kZeroRadius = 1e-6;

cplx power_ratio(cplx z, double a, double b, cplx alpha) {
  return std::exp(alpha * (std::log(z - b) - std::log(z - a)));
}

cplx reflected_power_ratio(cplx z, double a, double b, cplx alpha) {
  return std::exp(alpha * (std::log(a * z - 1.0) - std::log(b * z - 1.0)));
}

// Sampled continuity on a few circles inside the annulus; a branch jump shows
// up as a finite relative step that does not shrink with the grid.
void assert_continuity(const AnalyticSymbol& s) {
  const double ri = s.effective_inner();
  const double ro = std::min(s.effective_outer(), 4.0);
  std::vector<double> radii{1.0};
  if (ri < 1.0) radii.push_back(0.5 * (ri + 1.0));
  if (ro > 1.0) radii.push_back(0.5 * (ro + 1.0));
  const std::size_t n = 2048;
  for (double rad : radii) {
    const auto g = CircleGrid::make(rad, n);
    cplx prev = s(g.nodes[n - 1]);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx cur = s(g.nodes[j]);
      if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
        fail(ErrorKind::branch, s.label + ": non-finite value on the annulus");
      const double scale = std::max(std::abs(prev), std::abs(cur));
      if (scale > 0.0 && std::abs(cur - prev) > 0.25 * scale)
        fail(ErrorKind::branch, s.label + ": branch discontinuity detected on the annulus");
      prev = cur;
    }
  }
}

std::string fmt_param(cplx v) {
  std::ostringstream os;
  os << v.real();
  if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
  return os.str();
}

}  // namespace

AnalyticSymbol constant_symbol(cplx value) {
  AnalyticSymbol s;
  s.eval = [value](cplx) { return value; };
  s.inner_radius = kZeroRadius;
  s.outer_radius = kInfiniteRadius;
  s.label = "constant(" + fmt_param(value) + ")";
  s.real_parameters = value.imag() == 0.0;
  return s;
}

AnalyticSymbol laurent_polynomial_symbol(const std::map<int, cplx>& coeffs) {
  AnalyticSymbol s;
  s.eval = [coeffs](cplx z) {
    cplx acc = 0.0;
    for (const auto& [k, c] : coeffs) acc += c * std::pow(z, k);
    return acc;
  };
  s.inner_radius = kZeroRadius;
  s.outer_radius = kInfiniteRadius;
  s.label = "laurent";
  s.real_parameters = std::all_of(coeffs.begin(), coeffs.end(),
                                  [](const auto& kv) { return kv.second.imag() == 0.0; });
  return s;
}

AnalyticSymbol build_rational_power(double a, double b, cplx alpha, int sign) {
  if (!(0.0 < a && a < b && b < 1.0)) fail(ErrorKind::domain, "rational power needs 0 < a < b < 1");
  if (sign != 1 && sign != -1) fail(ErrorKind::domain, "sign must be +1 or -1");
  if (alpha == cplx(0.0, 0.0)) return constant_symbol(static_cast<double>(sign));
  AnalyticSymbol s;
  const double sg = sign;
  s.eval = [a, b, alpha, sg](cplx z) { return sg * power_ratio(z, a, b, alpha); };
  s.inner_radius = b;
  s.outer_radius = kInfiniteRadius;
  s.label = "rational_power(" + fmt_param(a) + "," + fmt_param(b) + "," + fmt_param(alpha) + ")";
  s.real_parameters = alpha.imag() == 0.0;
  assert_continuity(s);
  return s;
}

AnalyticSymbol build_reflected_rational_power(double a, double b, cplx alpha) {
  if (!(0.0 < a && a < b && b < 1.0)) fail(ErrorKind::domain, "reflected power needs 0 < a < b < 1");
  AnalyticSymbol s;
  s.eval = [a, b, alpha](cplx z) { return reflected_power_ratio(z, a, b, alpha); };
  s.inner_radius = kZeroRadius;
  s.outer_radius = 1.0 / b;
  s.label = "reflected_power(" + fmt_param(a) + "," + fmt_param(b) + "," + fmt_param(alpha) + ")";
  s.real_parameters = alpha.imag() == 0.0;
  assert_continuity(s);
  return s;
}

AnalyticSymbol build_d_product(const std::vector<RationalPowerFactor>& factors) {
  if (factors.empty()) return constant_symbol(1.0);
  double last = 0.0;
  for (const auto& f : factors) {
    if (!(f.a > last && f.a < f.b && f.b < 1.0))
      fail(ErrorKind::domain, "d-product factors must interlace: 0 < a1 < b1 < ... < am < bm < 1");
    if (f.sign != 1 && f.sign != -1) fail(ErrorKind::domain, "sign must be +1 or -1");
    last = f.b;
  }
  AnalyticSymbol s;
  s.eval = [factors](cplx z) {
    cplx acc = 1.0;
    for (const auto& f : factors)
      acc *= static_cast<double>(f.sign) * power_ratio(z, f.a, f.b, f.alpha) *
             reflected_power_ratio(z, f.a, f.b, f.alpha);
    return acc;
  };
  s.inner_radius = factors.back().b;
  s.outer_radius = 1.0 / factors.back().b;
  s.label = "d_product[" + std::to_string(factors.size()) + "]";
  s.real_parameters = std::all_of(factors.begin(), factors.end(),
                                  [](const auto& f) { return f.alpha.imag() == 0.0; });
  assert_continuity(s);
  return s;
}

AnalyticSymbol multiply(const AnalyticSymbol& f, const AnalyticSymbol& g) {
  AnalyticSymbol s;
  s.eval = [fe = f.eval, ge = g.eval](cplx z) { return fe(z) * ge(z); };
  s.inner_radius = std::max(f.inner_radius, g.inner_radius);
  s.outer_radius = std::min(f.outer_radius, g.outer_radius);
  s.label = f.label + "*" + g.label;
  s.real_parameters = f.real_parameters && g.real_parameters;
  return s;
}

AnalyticSymbol scale(const AnalyticSymbol& f, cplx c) {
  AnalyticSymbol s = f;
  s.eval = [fe = f.eval, c](cplx z) { return c * fe(z); };
  s.label = fmt_param(c) + "*" + f.label;
  s.real_parameters = f.real_parameters && c.imag() == 0.0;
  return s;
}

AnalyticSymbol reflect(const AnalyticSymbol& f) {
  AnalyticSymbol s;
  s.eval = [fe = f.eval](cplx z) { return fe(1.0 / z); };
  s.inner_radius = std::min(1.0 / f.outer_radius, 0.999999);
  s.outer_radius = std::max(1.0 / f.inner_radius, 1.000001);
  s.label = "reflect(" + f.label + ")";
  s.real_parameters = f.real_parameters;
  return s;
}

Annulus SymbolPair::symmetric_annulus() const {
  double ri = std::max(phi.inner_radius, w.inner_radius);
  double ro = std::min(phi.outer_radius, w.outer_radius);
  const double r0 = std::max(ri, 1.0 / ro);
  return {r0, 1.0 / r0};
}

SymbolPair make_pair(AnalyticSymbol phi, AnalyticSymbol w) {
  return SymbolPair{std::move(phi), std::move(w), std::nullopt};
}

SymbolPair make_pair_with_d(AnalyticSymbol phi, AnalyticSymbol d) {
  AnalyticSymbol w = multiply(d, phi);
  w.label = "w";
  return SymbolPair{std::move(phi), std::move(w), std::move(d)};
}

double pair_consistency(const SymbolPair& pair, const CircleGrid& grid) {
  if (!pair.d) return 0.0;
  double m = 0.0;
  for (const auto& z : grid.nodes) m = std::max(m, std::abs(pair.w(z) - (*pair.d)(z) * pair.phi(z)));
  return m;
}

cplx FourierCoeffs::at(int k) const {
  if (!contains(k))
    fail(ErrorKind::usage, "Fourier index " + std::to_string(k) + " outside stored range [" +
                               std::to_string(k_min) + "," + std::to_string(k_max) + "]");
  return values[static_cast<std::size_t>(k - k_min)];
}

double spectral_tail(const std::vector<cplx>& raw) {
  const std::size_t n = raw.size();
  double peak = 0.0;
  for (const auto& v : raw) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const long lim = static_cast<long>(std::ceil(0.45 * static_cast<double>(n)));
  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    long k = static_cast<long>(i);
    if (k >= static_cast<long>(n / 2)) k -= static_cast<long>(n);
    if (std::labs(k) >= lim) tail = std::max(tail, std::abs(raw[i]));
  }
  return tail / peak;
}

namespace {
std::vector<cplx> sample(const AnalyticSymbol& sym, const CircleGrid& grid) {
  std::vector<cplx> v(grid.node_count);
  for (std::size_t j = 0; j < grid.node_count; ++j) v[j] = sym(grid.nodes[j]);
  return v;
}
}  // namespace

FourierCoeffs fourier_coeffs(const AnalyticSymbol& sym, int k_min, int k_max, const CircleGrid& grid,
                             double tail_tol) {
  if (k_max < k_min) fail(ErrorKind::usage, "empty Fourier index range");
  if (static_cast<std::size_t>(k_max - k_min) >= grid.node_count)
    fail(ErrorKind::aliasing, "index range exceeds grid size");
  if (!(grid.radius > sym.inner_radius && grid.radius < sym.outer_radius))
    fail(ErrorKind::domain, sym.label + ": grid radius outside the analyticity annulus");
  const auto samples = sample(sym, grid);
  const auto raw = dft_forward(samples);
  FourierCoeffs fc;
  fc.k_min = k_min;
  fc.k_max = k_max;
  fc.node_count = grid.node_count;
  fc.radius = grid.radius;
  fc.tail_bound = spectral_tail(raw);
  if (fc.tail_bound > tail_tol)
    fail(ErrorKind::resolution, sym.label + ": spectral tail above tolerance at N=" +
                                    std::to_string(grid.node_count));
  const long n = static_cast<long>(grid.node_count);
  fc.values.resize(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    const std::size_t idx = static_cast<std::size_t>(((k % n) + n) % n);
    cplx c = raw[idx];
    if (grid.radius != 1.0) c *= std::pow(grid.radius, -static_cast<double>(k));
    fc.values[static_cast<std::size_t>(k - k_min)] = c;
  }
  return fc;
}

std::size_t resolve_node_count(const AnalyticSymbol& sym, double radius, double tail_tol,
                               std::size_t at_least) {
  std::size_t n = kMinNodes;
  while (n < at_least) n *= 2;
  for (; n <= kMaxNodes; n *= 2) {
    const auto g = CircleGrid::make(radius, n);
    if (spectral_tail(dft_forward(sample(sym, g))) <= tail_tol) return n;
  }
  fail(ErrorKind::resolution, sym.label + ": no admissible grid up to N=65536");
}

FourierCoeffs fourier_coeffs_auto(const AnalyticSymbol& sym, int k_min, int k_max, double radius,
                                  double tail_tol) {
  std::size_t need = 2;
  while (need <= static_cast<std::size_t>(std::max(0, k_max - k_min))) need *= 2;
  const std::size_t n = resolve_node_count(sym, radius, tail_tol, need);
  return fourier_coeffs(sym, k_min, k_max, CircleGrid::make(radius, n), tail_tol);
}

Winding winding_number(const AnalyticSymbol& sym, const CircleGrid& grid) {
  double total = 0.0;
  cplx prev = sym(grid.nodes.back());
  if (std::abs(prev) < 1e-13) fail(ErrorKind::zero_on_contour, sym.label + " vanishes on the contour");
  for (std::size_t j = 0; j < grid.node_count; ++j) {
    const cplx cur = sym(grid.nodes[j]);
    if (std::abs(cur) < 1e-13) fail(ErrorKind::zero_on_contour, sym.label + " vanishes on the contour");
    total += std::arg(cur / prev);
    prev = cur;
  }
  const double unrounded = total / (2.0 * kPi);
  const double rounded = std::round(unrounded);
  if (std::abs(unrounded - rounded) > 0.1)
    fail(ErrorKind::resolution, sym.label + ": winding number not resolved on this grid");
  return {static_cast<int>(rounded), unrounded};
}

double verify_unimodular_involution(const AnalyticSymbol& sym, const CircleGrid& grid) {
  double m = 0.0;
  for (const auto& z : grid.nodes) m = std::max(m, std::abs(sym(z) * sym(1.0 / z) - 1.0));
  return m;
}

}  // namespace thasym
