#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "thasym/szego.hpp"

namespace thasym {

using Mat4 = Eigen::Matrix<cplx, 4, 4>;

enum class MomentSource { circle, interval };
enum class Precision { binary64, extended };

struct MomentTable {
  FourierCoeffs phi;  // phi_k
  FourierCoeffs w;    // w_k (Laurent coefficients or interval moments)
  int r = 0;
  int s = 0;
  int n_max = 0;
  MomentSource source = MomentSource::circle;
};

// Index ranges needed for determinants up to size n_max+1 and the right-hand
// sides of the size-n_max system.
struct MomentRanges {
  int phi_min, phi_max, w_min, w_max;
};
MomentRanges moment_ranges(int n_max, int r, int s);

MomentTable circle_moments(const SymbolPair& pair, int n_max, int r, int s);

Eigen::MatrixXcd th_matrix(const MomentTable& mt, int n);

struct DetResult {
  cplx value{0.0, 0.0};
  bool singular = false;
  double rcond = 0.0;  // reciprocal 1-norm condition estimate
};
DetResult th_det(const MomentTable& mt, int n, Precision prec = Precision::binary64);
DetResult dense_det(const Eigen::MatrixXcd& m, Precision prec = Precision::binary64);

struct OrthoResult {
  int n = 0;
  std::vector<cplx> monic_coeffs;  // a_0..a_n, a_n = 1
  cplx h{0.0, 0.0};                // D_{n+1}/D_n, authoritative
  cplx h_relation{0.0, 0.0};       // from the k = n orthogonality relation via moments
  std::vector<cplx> D_ladder;      // D_1..D_{n+1}
  double solve_residual = 0.0;
  double ortho_residual = -1.0;    // filled by ortho_residual(); -1 = not evaluated
  double condition_estimate = 1.0;
  bool ill_conditioned = false;    // condition estimate above 1e12

  cplx D(int k) const;  // D_0 = 1
  cplx eval(cplx z) const;
};

inline constexpr double kConditionWarning = 1e12;

OrthoResult ortho_poly(const MomentTable& mt, int n, Precision prec = Precision::binary64);

// Coefficients of Y21: solves (T_n + H_n) beta = (0, ..., 0, -1).
std::vector<cplx> y21_coefficients(const MomentTable& mt, int n, Precision prec = Precision::binary64);

// Unit-circle grid used for orthogonality and Y second-column quadrature.
std::size_t pair_node_count(const SymbolPair& pair, int n);

double ortho_residual(OrthoResult& res, const SymbolPair& pair, int r, int s);

struct YJumpReport {
  double jump_second_column = 0.0;
  double jump_first_column = 0.0;
  double extrapolation_error = 0.0;
  double normalization = 0.0;  // |z^{-n} Y11(z) - 1| * |z| at |z| = 1e3
  double y21_leading_error = 0.0;
};

// Density of the second-column Cauchy integral for a polynomial q.
std::vector<cplx> y_density(const SymbolPair& pair, const std::function<cplx(cplx)>& q, int r, int s,
                            const CircleGrid& grid);

YJumpReport build_Y_and_verify(const SymbolPair& pair, const OrthoResult& res_n, const OrthoResult& res_nm1,
                               int r, int s, const std::vector<double>& eps_list,
                               const std::vector<double>& angles);

struct CValues {
  cplx c1, c2, c3, c4;
};
CValues exact_C(const SymbolPair& pair, const OrthoResult& res_n, const OrthoResult& res_nm1, int r, int s);

struct CharpolyResult {
  cplx det_direct;
  cplx det_th;
};
CharpolyResult charpoly_identity(const AnalyticSymbol& w, cplx lambda, int n);

Mat4 w_matrix();
Mat4 gx_jump(const SymbolPair& pair, cplx z);
std::array<double, 4> singular_values(const Mat4& m);
std::array<double, 4> rank_GXW(const SymbolPair& pair);

}  // namespace thasym
