#pragma once

#include <functional>
#include <string>
#include <vector>

#include "thasym/model.hpp"

namespace thasym {

// Hankel weight living on [a, b] with 0 < a < b < 1.
struct IntervalWeight {
  std::function<cplx(double)> w;
  double a = 0.0;
  double b = 0.0;
  int s = 0;
  std::size_t order = 128;  // Gauss-Legendre order
  std::string label;
};

void validate_interval_weight(const IntervalWeight& iw);

// int_a^b g(t)/(t - z) dt; refuses z within 1e-8 of [a,b].
cplx interval_cauchy(const std::function<cplx(double)>& g, double a, double b, cplx z, std::size_t order = 128);
inline constexpr double kCutRefusal = 1e-8;

// w_k = int_a^b x^k w(x) dx for k_min..k_max, checked under order doubling.
FourierCoeffs interval_moments(const IntervalWeight& iw, int k_min, int k_max);
inline constexpr double kMomentDoublingTolerance = 1e-13;

MomentTable interval_moment_table(const AnalyticSymbol& phi, const IntervalWeight& iw, int n_max, int r);
OrthoResult interval_ortho(const AnalyticSymbol& phi, const IntervalWeight& iw, int n, int r,
                           Precision prec = Precision::binary64);
// Max over k of the mixed circle/interval orthogonality defect.
double interval_ortho_residual(OrthoResult& res, const AnalyticSymbol& phi, const IntervalWeight& iw, int r);

struct UField {
  IntervalWeight iw;
  cplx u(cplx z) const;        // z int t^{s-1} w(t)/(t - z) dt
  cplx u_tilde(cplx z) const;  // u(1/z)
};
UField u_field(const IntervalWeight& iw);

struct JumpCheck {
  double residual = 0.0;
  double extrapolation_error = 0.0;
};
// |u(x+ie) - u(x-ie) - 2 pi i x^s w(x)| extrapolated to e = 0
JumpCheck verify_u_jump(const UField& uf, double x, const std::vector<double>& eps_list);
// |ut(y+ie) - ut(y-ie) + 2 pi i y^{-s} w(1/y)| for y in (1/b, 1/a)
JumpCheck verify_u_tilde_jump(const UField& uf, double y, const std::vector<double>& eps_list);

struct ModelPairReport {
  SymbolPair pair;          // (phi, -u~)
  double residual = 0.0;    // max |phi phi~ - u u~| on the unit circle
  double normalized = 0.0;  // residual / max |phi phi~|
};
ModelPairReport model_pair(const AnalyticSymbol& phi, const UField& uf, std::size_t nodes = 512);

Mat4 theta_jump(cplx phi, cplx phi_t, cplx u, cplx u_t);
// Max entrywise gap between the interval model jump and the circle model jump with w -> -u~.
double theta_lambda_gap(const AnalyticSymbol& phi, const UField& uf, const std::vector<cplx>& points);

struct IntervalYReport {
  double circle_jump = 0.0;    // second column across the unit circle
  double interval_jump = 0.0;  // second column across (a, b)
  double first_column_jump = 0.0;
  double extrapolation_error = 0.0;
  double value_scale = 0.0;  // largest |Y| entry sampled near the contours
};
IntervalYReport interval_Y_verify(const AnalyticSymbol& phi, const IntervalWeight& iw, const OrthoResult& res_n,
                                  const OrthoResult& res_nm1, int r, const std::vector<double>& eps_list,
                                  const std::vector<double>& angles, const std::vector<double>& xs);

}  // namespace thasym
