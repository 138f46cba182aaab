#include "thasym/numerics.hpp"

#include <fftw3.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

#include "thasym/error.hpp"

namespace thasym {

namespace {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

CircleGrid CircleGrid::make(double radius, std::size_t node_count) {
  if (!(radius > 0.0)) fail(ErrorKind::domain, "grid radius must be positive");
  if (!is_power_of_two(node_count) || node_count < 2)
    fail(ErrorKind::domain, "grid node count must be a power of two");
  CircleGrid g;
  g.radius = radius;
  g.node_count = node_count;
  g.nodes.resize(node_count);
  for (std::size_t j = 0; j < node_count; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(node_count);
    g.nodes[j] = radius * cplx(std::cos(t), std::sin(t));
  }
  return g;
}

std::vector<cplx> dft_forward(const std::vector<cplx>& samples) {
  const std::size_t n = samples.size();
  std::vector<cplx> in(samples), out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= inv;
  return out;
}

std::vector<cplx> laurent_from_samples(const std::vector<cplx>& samples, double radius) {
  const std::size_t n = samples.size();
  const auto raw = dft_forward(samples);
  std::vector<cplx> c(n);
  const long half = static_cast<long>(n / 2);
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const long k = i - half;
    const std::size_t idx = static_cast<std::size_t>((k % static_cast<long>(n) + static_cast<long>(n)) %
                                                     static_cast<long>(n));
    c[static_cast<std::size_t>(i)] =
        radius == 1.0 ? raw[idx] : raw[idx] * std::pow(radius, -static_cast<double>(k));
  }
  return c;
}

QuadratureRule gauss_jacobi(std::size_t order, double a, double b) {
  if (order == 0) fail(ErrorKind::domain, "quadrature order must be positive");
  if (!(a > -1.0) || !(b > -1.0)) fail(ErrorKind::domain, "Jacobi exponents must exceed -1");
  // Golub-Welsch on the symmetric Jacobi matrix of the monic recurrence.
  const std::size_t n = order;
  Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    if (k == 0) {
      diag(0) = (b - a) / (a + b + 2.0);
    } else {
      diag(static_cast<Eigen::Index>(k)) = (b * b - a * a) / (s * (s + 2.0));
    }
    if (k + 1 < n) {
      const double k1 = kk + 1.0;
      const double s1 = 2.0 * k1 + a + b;
      const double num = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
      const double den = s1 * s1 * (s1 + 1.0) * (s1 - 1.0);
      off(static_cast<Eigen::Index>(k)) = std::sqrt(num / den);
    }
  }
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    jm(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag(static_cast<Eigen::Index>(k));
    if (k + 1 < n) {
      jm(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = off(static_cast<Eigen::Index>(k));
      jm(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = off(static_cast<Eigen::Index>(k));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rule.nodes[k] = es.eigenvalues()(static_cast<Eigen::Index>(k));
    const double v0 = es.eigenvectors()(0, static_cast<Eigen::Index>(k));
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

QuadratureRule gauss_legendre(std::size_t order) { return gauss_jacobi(order, 0.0, 0.0); }

Extrapolated richardson(const std::vector<double>& eps, const std::vector<cplx>& values) {
  if (eps.size() != values.size() || eps.empty())
    fail(ErrorKind::usage, "richardson needs matching, non-empty eps/value lists");
  auto neville = [&](std::size_t count) {
    std::vector<cplx> p(values.begin(), values.begin() + static_cast<long>(count));
    for (std::size_t m = 1; m < count; ++m) {
      for (std::size_t i = 0; i + m < count; ++i) {
        const double xi = eps[i], xj = eps[i + m];
        p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
      }
    }
    return p[0];
  };
  const cplx full = neville(values.size());
  double est = 0.0;
  if (values.size() > 1) est = std::abs(full - neville(values.size() - 1));
  return {full, est};
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto c = fit_basis({std::vector<double>(x.size(), 1.0), x}, y);
  return {c[0], c[1]};
}

std::vector<double> fit_basis(const std::vector<std::vector<double>>& columns,
                              const std::vector<double>& y) {
  const auto rows = static_cast<Eigen::Index>(y.size());
  const auto cols = static_cast<Eigen::Index>(columns.size());
  if (rows < cols) fail(ErrorKind::usage, "underdetermined fit");
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    rhs(i) = y[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(sol.data(), sol.data() + sol.size());
}

cplx complex_gamma(cplx z) {
  gsl_sf_result lnr, arg;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  const int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) fail(ErrorKind::domain, "complex gamma evaluation failed");
  return std::exp(cplx(lnr.val, arg.val));
}

}  // namespace thasym
