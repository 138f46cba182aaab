#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace thasym {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Equispaced nodes radius*e^{2 pi i j/N}; N must be a power of two.
struct CircleGrid {
  double radius = 1.0;
  std::size_t node_count = 0;
  std::vector<cplx> nodes;

  static CircleGrid make(double radius, std::size_t node_count);
  bool on_unit_circle() const { return radius == 1.0; }
};

bool is_power_of_two(std::size_t n);

// Laurent coefficients of samples taken on grid; entry i holds index k = i - N/2,
// already rescaled by radius^{-k}.
std::vector<cplx> laurent_from_samples(const std::vector<cplx>& samples, double radius);

// Plain DFT magnitudes (no radius rescaling) used for tail diagnostics.
std::vector<cplx> dft_forward(const std::vector<cplx>& samples);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss rule on [-1,1] for the weight (1-x)^a (1+x)^b.
QuadratureRule gauss_jacobi(std::size_t order, double a, double b);
QuadratureRule gauss_legendre(std::size_t order);

struct Extrapolated {
  cplx value;
  double error_estimate;
};

// Neville extrapolation of f(eps) to eps = 0; the estimate compares against the
// tableau that omits the smallest eps.
Extrapolated richardson(const std::vector<double>& eps, const std::vector<cplx>& values);

struct LineFit {
  double intercept;
  double slope;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares coefficients for y ~ sum_j c_j * basis_j(x).
std::vector<double> fit_basis(const std::vector<std::vector<double>>& columns,
                              const std::vector<double>& y);

cplx complex_gamma(cplx z);

}  // namespace thasym
