#pragma once
// Reference computations that share no code with the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// (1/2pi) int_0^{2pi} f(theta) dtheta, adaptive Gauss-Kronrod on the real and imaginary parts
inline cplx circle_mean(const std::function<cplx(double)>& f, unsigned depth = 15) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double re = GK::integrate([&](double t) { return f(t).real(); }, 0.0, 2.0 * kPi, depth, 1e-14);
  const double im = GK::integrate([&](double t) { return f(t).imag(); }, 0.0, 2.0 * kPi, depth, 1e-14);
  return cplx(re, im) / (2.0 * kPi);
}

// k-th Laurent coefficient of f on the circle |z| = radius
inline cplx laurent_coeff(const std::function<cplx(cplx)>& f, int k, double radius = 1.0) {
  return circle_mean([&](double t) {
           const cplx z = std::polar(radius, t);
           return f(z) * std::pow(z, -k);
         });
}

inline cplx real_integral(const std::function<cplx(double)>& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double re = GK::integrate([&](double t) { return f(t).real(); }, a, b, 15, 1e-14);
  const double im = GK::integrate([&](double t) { return f(t).imag(); }, a, b, 15, 1e-14);
  return {re, im};
}

using Matrix = std::vector<std::vector<cplx>>;

// Leibniz expansion; fine up to 7x7
inline cplx leibniz_det(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    cplx term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// (f * g)_k from two coefficient lists indexed lo..hi
inline cplx convolve_at(const std::function<cplx(int)>& f, const std::function<cplx(int)>& g, int k, int lo, int hi) {
  cplx acc = 0.0;
  for (int j = lo; j <= hi; ++j) acc += f(j) * g(k - j);
  return acc;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
