#pragma once

#include "thasym/symbol.hpp"

namespace thasym {

enum class Region { inside, outside, boundary_plus, boundary_minus };

struct LogBoundary {
  CircleGrid grid;
  std::vector<cplx> samples;  // continuous branch of log sym along the grid
  FourierCoeffs fourier;      // full index range [-N/2, N/2)
};

LogBoundary continuous_log(const AnalyticSymbol& sym, const CircleGrid& grid);
// Doubles the grid until the log-spectrum tail passes.
LogBoundary continuous_log_auto(const AnalyticSymbol& sym);

struct SzegoData {
  FourierCoeffs log_fourier;
  cplx value_at_zero;
  cplx value_at_infinity_exterior;
};

inline constexpr double kLogTailTolerance = 1e-12;

SzegoData szego_data(const LogBoundary& lb);
SzegoData szego_function(const AnalyticSymbol& sym);

cplx eval_szego(const SzegoData& sd, cplx z, Region region);
// Value of f~(z) = f(1/z); the reflection is applied before the side is chosen.
cplx eval_szego_reflected(const SzegoData& sd, cplx z, Region region);

struct CauchyField {
  FourierCoeffs density_fourier;  // full index range [-N/2, N/2)
};

// Density sampled on the unit-circle grid.
CauchyField cauchy_from_samples(const std::vector<cplx>& samples, double tail_tol = kTailTolerance);
cplx eval_cauchy(const CauchyField& cf, cplx z, Region region);

// rho = -1/(beta_- beta_+ alpha~_- alpha_+) sampled on grid
std::vector<cplx> rho_samples(const SzegoData& alpha_sd, const SzegoData& beta_sd, const CircleGrid& grid);
CauchyField rho_field(const SzegoData& alpha_sd, const SzegoData& beta_sd, const CircleGrid& grid);
// Doubles the grid until the density spectrum passes the tail tolerance.
CauchyField rho_field_auto(const SzegoData& alpha_sd, const SzegoData& beta_sd);

// Series helpers shared by Szego and Cauchy evaluation.
cplx series_nonneg(const FourierCoeffs& fc, cplx z);  // sum_{k>=0} c_k z^k
cplx series_neg(const FourierCoeffs& fc, cplx z);     // sum_{k<0} c_k z^k

void check_region(cplx z, Region region);

}  // namespace thasym
