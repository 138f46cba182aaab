#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "thasym/th_linear.hpp"

namespace thasym {

struct ModelField {
  SymbolPair pair;
  SzegoData alpha;
  SzegoData beta;
  CauchyField crho;
  cplx alpha0;
  cplx crho0;
  Mat4 lambda_inf_inverse;
  Mat4 lambda_at_zero;
  Mat4 W;
  double involution_residual = 0.0;
};

inline constexpr double kInvolutionTolerance = 1e-10;

ModelField model_field(const SymbolPair& pair);

// Szego and Cauchy factors on one side of the unit circle.
struct SideValues {
  cplx alpha, beta, alpha_tilde, crho;
};
SideValues side_values(const ModelField& mf, cplx z, Region region);

// Boundary-value factorizations of phi and d by their Szego functions, plus beta(0) and beta = beta~.
struct SzegoJumpReport {
  double alpha_jump = 0.0;        // alpha_+ - alpha_- phi
  double beta_jump = 0.0;         // beta_+ - beta_- d
  double alpha_tilde_jump = 0.0;  // alpha~_- - alpha~_+ phi~
  double beta_tilde_jump = 0.0;   // beta~_- - beta~_+ d~
  cplx beta_at_zero;
  double beta_symmetry = 0.0;     // max |beta(z) - beta(1/z)| over interior probes
};
SzegoJumpReport szego_jump_identities(const ModelField& mf, std::size_t nodes = 512, std::size_t probes = 32);

Mat4 lambda_eval(const ModelField& mf, cplx z, Region region);
// General jump of the model problem built from (phi, w) values at z and 1/z.
Mat4 lambda_jump(cplx phi, cplx w, cplx phi_t, cplx w_t);
Mat4 lambda_jump(const SymbolPair& pair, cplx z);

struct ModelJumpReport {
  double residual = 0.0;
  double j23_max = 0.0;
  double extrapolation_error = 0.0;
};
ModelJumpReport verify_model_jump(const ModelField& mf, const CircleGrid& grid,
                                  const std::vector<double>& eps_list);

enum class GLabel { g12, g14, g23, g43, g21, g32, g34, g41 };
inline constexpr std::array<GLabel, 4> kInteriorLabels{GLabel::g12, GLabel::g14, GLabel::g23, GLabel::g43};
inline constexpr std::array<GLabel, 4> kExteriorLabels{GLabel::g21, GLabel::g32, GLabel::g34, GLabel::g41};
bool is_interior(GLabel l);
const char* label_name(GLabel l);
// Matrix position (row, col), zero based.
std::pair<int, int> label_position(GLabel l);

cplx g_eval(cplx z, GLabel which, const ModelField& mf);

struct ContourSpec {
  double inner = 0.0;  // r'_i
  double outer = 0.0;  // r'_o
  std::size_t node_count = 512;
};
ContourSpec default_contours(const ModelField& mf, std::size_t node_count = 512);

struct REntry {
  std::map<GLabel, cplx> r1_at_0;
  std::map<GLabel, cplx> rprime;
  cplx E{0.0, 0.0};
  double E_floor = 0.0;  // rounding floor of the trapezoid sums behind E
  bool E_resolved = true;
};

struct RTable {
  std::vector<int> n_values;
  std::map<int, REntry> entries;
  ContourSpec contours;
  double doubling_change = 0.0;

  const REntry& at(int n) const;
  bool has(int n) const { return entries.count(n) != 0; }
};

inline constexpr double kDoublingTolerance = 1e-11;

RTable R_entries(const ModelField& mf, const std::vector<int>& n_list,
                 std::optional<ContourSpec> contours = std::nullopt);

// R_{1,jk}(z;n) at a general point off the contour.
cplx r1_at(const ModelField& mf, const ContourSpec& cs, GLabel which, cplx z, int n);

Mat4 P_asym(int n, const ModelField& mf, const RTable& rt);

struct CSolution {
  CValues c;
  double residual = 0.0;
  cplx doubled_det;
  std::array<cplx, 6> pivots;
};
CSolution solve_C_from_P(const Mat4& p);

std::pair<cplx, cplx> C24_asym(int n, const RTable& rt, const ModelField& mf);

struct BEntries {
  cplx b12, b32, b42;
};
BEntries B_entries(int n, const RTable& rt, const ModelField& mf);

// -alpha(0) E(n)/E(n-1); uses the table's E(n-1) when present.
cplx h_asym(int n, const RTable& rt, const ModelField& mf);
// Same quantity with the denominator built from the R^(1) entries at n.
cplx h_asym_rprime(int n, const RTable& rt, const ModelField& mf);

cplx poly_asym(cplx z, int n, Region region, const RTable& rt, const ModelField& mf);

struct ExampleParams {
  double a = 0.2, b = 0.3;
  cplx alpha{0.3, 0.0};
  double a1 = 0.5, b1 = 0.7;
  cplx alpha1{0.4, 0.0};
};
void validate_example(const ExampleParams& p);
SymbolPair example_pair(const ExampleParams& p);

struct KappaResult {
  cplx value;   // published closed form
  cplx coarse;  // at half the order
  double change;
  // Same integral with the phase -(i/pi)e^{-i pi alpha1} replaced by the jump factor
  // sin(pi alpha1)/pi in both places; this is the constant E(n) actually approaches.
  cplx corrected;
};
KappaResult kappa(const ExampleParams& p, std::size_t order = 128);
cplx E_asym_example(int n, const ExampleParams& p, cplx kappa_val);

}  // namespace thasym
