#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "thasym/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz+Hankel determinant and asymptotics batch runner"};
  app.set_version_flag("--version", std::string(thasym::kVersion));
  app.require_subcommand(1);

  std::string config_path, out_dir, precision;
  std::optional<int> n_min, n_max, n_step;
  std::optional<std::uint64_t> seed;

  for (const auto& mode : thasym::kModes) {
    auto* sub = app.add_subcommand(mode, "run the " + mode + " pipeline");
    sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--n-min", n_min);
    sub->add_option("--n-max", n_max);
    sub->add_option("--n-step", n_step);
    sub->add_option("--precision", precision)->check(CLI::IsMember({"double", "extended"}));
    sub->add_option("--seed", seed, "reserved; all computations are deterministic");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : thasym::kExitValidation;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  std::vector<std::string> violations;
  thasym::RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    cfg = thasym::config_from_json_text(ss.str(), violations);
  }
  if (!cfg.mode.empty() && cfg.mode != mode)
    violations.push_back("config mode '" + cfg.mode + "' does not match subcommand '" + mode + "'");
  cfg.mode = mode;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (n_min) cfg.n_min = *n_min;
  if (n_max) cfg.n_max = *n_max;
  if (n_step) cfg.n_step = *n_step;
  if (!precision.empty()) cfg.precision = precision;
  if (seed) cfg.seed = *seed;

  return thasym::run(cfg, std::cerr, violations);
}
