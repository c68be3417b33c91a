#include <CLI11.hpp>
#include <iostream>

#include "secrelay/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"secrelay: achievable rates and capacity bounds for secure "
               "multi-phase relaying in cognitive radio networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;

  app.add_option("--config", config_path, "path to the run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
  app.add_option("--seed", seed, "seed overriding the configured one")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  const char* names[] = {"rates", "optimize", "sweep", "boundgap", "dof", "dmc"};
  for (const char* n : names) app.add_subcommand(n);

  CLI11_PARSE(app, argc, argv);

  secrelay::RunConfig cfg;
  try {
    cfg = secrelay::parse_config_file(config_path);
  } catch (const secrelay::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return secrelay::kExitConfig;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed_set) {
    cfg.seed = seed;
    cfg.sweep.seed = seed;
    cfg.boundgap.seed = seed;
    cfg.dof.seed = seed;
  }
  if (threads >= 0) {
    cfg.threads = threads;
    cfg.sweep.threads = threads;
    cfg.boundgap.threads = threads;
    cfg.dof.threads = threads;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  return secrelay::run_command(sub, cfg, std::cout, std::cerr);
}
