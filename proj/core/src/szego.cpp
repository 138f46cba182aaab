#include "thasym/szego.hpp"

#include <algorithm>
#include <cmath>

#include "thasym/error.hpp"

namespace thasym {

namespace {

constexpr double kBoundaryTol = 1e-12;

FourierCoeffs full_range(const std::vector<cplx>& samples, double tail_tol, const char* what) {
  const std::size_t n = samples.size();
  const auto raw = dft_forward(samples);
  FourierCoeffs fc;
  fc.node_count = n;
  fc.radius = 1.0;
  fc.tail_bound = spectral_tail(raw);
  if (fc.tail_bound > tail_tol)
    fail(ErrorKind::resolution, std::string(what) + ": spectral tail above tolerance at N=" + std::to_string(n));
  const int half = static_cast<int>(n / 2);
  fc.k_min = -half;
  fc.k_max = half - 1;
  fc.values.resize(n);
  for (int k = fc.k_min; k <= fc.k_max; ++k) {
    const std::size_t idx = static_cast<std::size_t>((k + static_cast<int>(n)) % static_cast<int>(n));
    fc.values[static_cast<std::size_t>(k - fc.k_min)] = raw[idx];
  }
  return fc;
}

}  // namespace

void check_region(cplx z, Region region) {
  const double m = std::abs(z);
  switch (region) {
    case Region::inside:
      if (!(m < 1.0)) fail(ErrorKind::usage, "inside evaluation needs |z| < 1");
      break;
    case Region::outside:
      if (!(m > 1.0)) fail(ErrorKind::usage, "outside evaluation needs |z| > 1");
      break;
    case Region::boundary_plus:
    case Region::boundary_minus:
      if (std::abs(m - 1.0) > kBoundaryTol) fail(ErrorKind::usage, "boundary evaluation needs |z| = 1");
      break;
  }
}

cplx series_nonneg(const FourierCoeffs& fc, cplx z) {
  cplx acc = 0.0;
  for (int k = fc.k_max; k >= 0; --k) acc = acc * z + fc.at(k);
  return acc;
}

cplx series_neg(const FourierCoeffs& fc, cplx z) {
  const cplx iz = 1.0 / z;
  cplx acc = 0.0;
  for (int k = fc.k_min; k <= -1; ++k) acc = (acc + fc.at(k)) * iz;
  return acc;
}

LogBoundary continuous_log(const AnalyticSymbol& sym, const CircleGrid& grid) {
  if (!grid.on_unit_circle()) fail(ErrorKind::usage, "continuous_log needs the unit circle");
  const Winding wn = winding_number(sym, grid);
  if (wn.value != 0)
    fail(ErrorKind::winding, sym.label + ": nonzero winding number, Szego function undefined");
  LogBoundary lb;
  lb.grid = grid;
  lb.samples.resize(grid.node_count);
  cplx prev = sym(grid.nodes[0]);
  lb.samples[0] = std::log(prev);
  for (std::size_t j = 1; j < grid.node_count; ++j) {
    const cplx cur = sym(grid.nodes[j]);
    const double step = std::arg(cur / prev);
    if (std::abs(step) >= kPi * (1.0 - 1e-12)) fail(ErrorKind::resolution, "phase step reaches pi");
    lb.samples[j] = lb.samples[j - 1] + cplx(std::log(std::abs(cur) / std::abs(prev)), step);
    prev = cur;
  }
  if (std::abs(lb.samples.back() - lb.samples.front()) >= kPi)
    fail(ErrorKind::resolution, "log branch does not close up");
  lb.fourier = full_range(lb.samples, kLogTailTolerance, "log-symbol");
  return lb;
}

LogBoundary continuous_log_auto(const AnalyticSymbol& sym) {
  for (std::size_t n = kMinNodes; n <= kMaxNodes; n *= 2) {
    try {
      return continuous_log(sym, CircleGrid::make(1.0, n));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::resolution || n == kMaxNodes) throw;
    }
  }
  fail(ErrorKind::resolution, "log-symbol unresolved");
}

SzegoData szego_data(const LogBoundary& lb) {
  if (lb.fourier.tail_bound > kLogTailTolerance)
    fail(ErrorKind::resolution, "log-symbol series truncation above tolerance");
  SzegoData sd;
  sd.log_fourier = lb.fourier;
  sd.value_at_zero = std::exp(lb.fourier.at(0));
  sd.value_at_infinity_exterior = 1.0;
  return sd;
}

SzegoData szego_function(const AnalyticSymbol& sym) { return szego_data(continuous_log_auto(sym)); }

cplx eval_szego(const SzegoData& sd, cplx z, Region region) {
  check_region(z, region);
  switch (region) {
    case Region::inside:
    case Region::boundary_plus:
      return std::exp(series_nonneg(sd.log_fourier, z));
    case Region::outside:
    case Region::boundary_minus:
      return std::exp(-series_neg(sd.log_fourier, z));
  }
  return 0.0;
}

cplx eval_szego_reflected(const SzegoData& sd, cplx z, Region region) {
  const cplx iz = 1.0 / z;
  switch (region) {
    case Region::inside: return eval_szego(sd, iz, Region::outside);
    case Region::outside: return eval_szego(sd, iz, Region::inside);
    case Region::boundary_plus: return eval_szego(sd, iz, Region::boundary_minus);
    case Region::boundary_minus: return eval_szego(sd, iz, Region::boundary_plus);
  }
  return 0.0;
}

CauchyField cauchy_from_samples(const std::vector<cplx>& samples, double tail_tol) {
  if (!is_power_of_two(samples.size())) fail(ErrorKind::usage, "density grid must be a power of two");
  return CauchyField{full_range(samples, tail_tol, "Cauchy density")};
}

cplx eval_cauchy(const CauchyField& cf, cplx z, Region region) {
  check_region(z, region);
  switch (region) {
    case Region::inside:
    case Region::boundary_plus:
      return series_nonneg(cf.density_fourier, z);
    case Region::outside:
    case Region::boundary_minus:
      return -series_neg(cf.density_fourier, z);
  }
  return 0.0;
}

std::vector<cplx> rho_samples(const SzegoData& alpha_sd, const SzegoData& beta_sd, const CircleGrid& grid) {
  if (!grid.on_unit_circle()) fail(ErrorKind::usage, "rho density lives on the unit circle");
  std::vector<cplx> out(grid.node_count);
  for (std::size_t j = 0; j < grid.node_count; ++j) {
    const cplx z = grid.nodes[j];
    const cplx bm = eval_szego(beta_sd, z, Region::boundary_minus);
    const cplx bp = eval_szego(beta_sd, z, Region::boundary_plus);
    const cplx atm = eval_szego_reflected(alpha_sd, z, Region::boundary_minus);
    const cplx ap = eval_szego(alpha_sd, z, Region::boundary_plus);
    if (std::min({std::abs(bm), std::abs(bp), std::abs(atm), std::abs(ap)}) < 1e-13)
      fail(ErrorKind::division, "Szego factor vanishes in rho");
    out[j] = -1.0 / (bm * bp * atm * ap);
  }
  return out;
}

CauchyField rho_field(const SzegoData& alpha_sd, const SzegoData& beta_sd, const CircleGrid& grid) {
  return cauchy_from_samples(rho_samples(alpha_sd, beta_sd, grid));
}

CauchyField rho_field_auto(const SzegoData& alpha_sd, const SzegoData& beta_sd) {
  for (std::size_t n = kMinNodes; n <= kMaxNodes; n *= 2) {
    try {
      return rho_field(alpha_sd, beta_sd, CircleGrid::make(1.0, n));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::resolution || n == kMaxNodes) throw;
    }
  }
  fail(ErrorKind::resolution, "rho density unresolved");
}

}  // namespace thasym
