#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thasym/interval.hpp"

namespace thasym {

inline constexpr const char* kVersion = "0.1.0";

// Symbol family + parameters as read from a run configuration.
struct SymbolSpec {
  std::string family = "constant";  // constant | laurent | rational_power | reflected_rational_power | d_product
  cplx value{1.0, 0.0};
  double a = 0.0;
  double b = 0.0;
  cplx alpha{0.0, 0.0};
  int sign = 1;
  std::map<int, cplx> coeffs;
  std::vector<RationalPowerFactor> factors;
};

struct IntervalSpec {
  std::string weight = "constant";  // constant | monomial | exp
  cplx value{1.0, 0.0};
  int power = 0;
  double a = 0.5;
  double b = 0.7;
  int s = 0;
  std::size_t order = 128;
};

struct RunConfig {
  std::string mode;
  SymbolSpec phi;
  std::optional<SymbolSpec> w;
  std::optional<SymbolSpec> d;
  std::optional<IntervalSpec> interval;
  ExampleParams example;
  int r = 1;
  int s = 1;
  int n_min = 1;
  int n_max = 8;
  int n_step = 1;
  std::optional<double> contour_inner;
  std::optional<double> contour_outer;
  std::size_t contour_nodes = 512;
  std::vector<double> eps{1e-3, 5e-4, 2.5e-4, 1.25e-4};
  std::vector<cplx> lambdas{{0.5, 0.0}, {-1.3, 0.0}, {0.2, 0.7}, {2.1, 0.0}, {-0.4, -0.9}};
  std::size_t kappa_order = 128;
  std::string precision = "double";
  std::string out_dir = ".";
  std::uint64_t seed = 0;  // accepted, never consumed
};

inline const std::vector<std::string> kModes{"coeffs",       "dets",     "ortho",   "asym",
                                             "verify-model", "interval", "example", "charpoly"};

// Parses JSON text; unknown keys and malformed values are reported as violations.
RunConfig config_from_json_text(const std::string& text, std::vector<std::string>& violations);
std::string config_to_json_text(const RunConfig& cfg);

std::vector<std::string> validate(const RunConfig& cfg);

AnalyticSymbol build_symbol(const SymbolSpec& spec);
IntervalWeight build_interval_weight(const IntervalSpec& spec);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitResolution = 3;

// Writes report.csv, summary.json and invariants.json under cfg.out_dir.
// Timings and progress go to log only, so the files stay reproducible.
// prior: violations found while parsing, reported together with validate(cfg).
int run(const RunConfig& cfg, std::ostream& log, const std::vector<std::string>& prior = {});

}  // namespace thasym
