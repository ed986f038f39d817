#include <iostream>

#include "CLI11.hpp"
#include "qtopo/io/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qtopo: driven-emitter steady states, cavity design and parameter search"};
  qtopo::io::CliOptions o;
  std::string out;
  std::uint64_t seed = 0;
  app.add_option("mode", o.mode, "steady | dynamics | gap | green-validate | pso | topopt | tomography")->required();
  app.add_option("--config", o.config_path, "configuration file")->required();
  auto* out_opt = app.add_option("--out", out, "output directory (overrides [run] output)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides [run] seed)");
  app.add_flag("--full-budget", o.full_budget, "large reference swarm budget for pso mode");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qtopo::io::kExitUsage;
  }
  if (*out_opt) o.out = out;
  if (*seed_opt) o.seed = seed;
  return qtopo::io::run_cli(o, std::cerr, std::cerr);
}
