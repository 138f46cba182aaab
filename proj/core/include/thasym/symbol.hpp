#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thasym/numerics.hpp"

namespace thasym {

inline constexpr double kInfiniteRadius = 1e6;
inline constexpr double kAnnulusMargin = 0.02;

struct AnalyticSymbol {
  std::function<cplx(cplx)> eval;
  double inner_radius = 0.0;
  double outer_radius = kInfiniteRadius;
  std::string label;
  bool real_parameters = false;  // real on the real axis off its cuts

  cplx operator()(cplx z) const { return eval(z); }
  double effective_inner() const { return inner_radius * (1.0 + kAnnulusMargin); }
  double effective_outer() const { return outer_radius * (1.0 - kAnnulusMargin); }
};

struct RationalPowerFactor {
  double a = 0.0;
  double b = 0.0;
  cplx alpha{0.0, 0.0};
  int sign = 1;
};

AnalyticSymbol constant_symbol(cplx value);
AnalyticSymbol laurent_polynomial_symbol(const std::map<int, cplx>& coeffs);
// sign * ((z-b)/(z-a))^alpha, cut on [a,b]
AnalyticSymbol build_rational_power(double a, double b, cplx alpha, int sign = 1);
// ((a z - 1)/(b z - 1))^alpha, cut on [1/b, 1/a]
AnalyticSymbol build_reflected_rational_power(double a, double b, cplx alpha);
AnalyticSymbol build_d_product(const std::vector<RationalPowerFactor>& factors);
AnalyticSymbol multiply(const AnalyticSymbol& f, const AnalyticSymbol& g);
AnalyticSymbol scale(const AnalyticSymbol& f, cplx c);
// z -> f(1/z)
AnalyticSymbol reflect(const AnalyticSymbol& f);

struct Annulus {
  double inner;
  double outer;
};

struct SymbolPair {
  AnalyticSymbol phi;
  AnalyticSymbol w;
  std::optional<AnalyticSymbol> d;

  // Annulus where phi, w and their reflections are all analytic.
  Annulus symmetric_annulus() const;
};

SymbolPair make_pair(AnalyticSymbol phi, AnalyticSymbol w);
SymbolPair make_pair_with_d(AnalyticSymbol phi, AnalyticSymbol d);
// max |w - d*phi| on the unit circle; 0 when d is absent
double pair_consistency(const SymbolPair& pair, const CircleGrid& grid);

struct FourierCoeffs {
  int k_min = 0;
  int k_max = -1;
  std::vector<cplx> values;
  double tail_bound = 0.0;
  std::size_t node_count = 0;
  double radius = 1.0;

  bool contains(int k) const { return k >= k_min && k <= k_max; }
  cplx at(int k) const;
};

inline constexpr double kTailTolerance = 1e-13;
inline constexpr std::size_t kMinNodes = 256;
inline constexpr std::size_t kMaxNodes = std::size_t{1} << 16;

// Relative size of the outer 10% of the discrete spectrum.
double spectral_tail(const std::vector<cplx>& raw_dft);

FourierCoeffs fourier_coeffs(const AnalyticSymbol& sym, int k_min, int k_max, const CircleGrid& grid,
                             double tail_tol = kTailTolerance);
// Doubles N from 256 until the tail passes.
FourierCoeffs fourier_coeffs_auto(const AnalyticSymbol& sym, int k_min, int k_max,
                                  double radius = 1.0, double tail_tol = kTailTolerance);
// Smallest admissible power-of-two grid size for sym on the given radius.
std::size_t resolve_node_count(const AnalyticSymbol& sym, double radius = 1.0,
                               double tail_tol = kTailTolerance, std::size_t at_least = kMinNodes);

struct Winding {
  int value;
  double unrounded;
};
Winding winding_number(const AnalyticSymbol& sym, const CircleGrid& grid);

double verify_unimodular_involution(const AnalyticSymbol& sym, const CircleGrid& grid);

}  // namespace thasym
