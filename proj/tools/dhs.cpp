// dhs <kind> --config path [--outdir path] [--seed n] [--overwrite] [--workers k]

#include <iostream>

#include "CLI11.hpp"
#include "dhs/config.hpp"
#include "dhs/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dispersive Hunter-Saxton numerical laboratory"};
  std::string kind, config_path, outdir;
  std::uint64_t seed = 0;
  bool overwrite = false;
  int workers = 1;
  app.add_option("kind", kind, "simulate, conserve, picard, linearized, difference, envelope, flow or audit")
      ->required();
  app.add_option("--config", config_path, "TOML or JSON scenario file")->required();
  app.add_option("--outdir", outdir, "output directory (default runs/<kind>)");
  app.add_option("--seed", seed, "seed for randomized presets");
  app.add_flag("--overwrite", overwrite, "replace an existing output directory");
  app.add_option("--workers", workers, "threads for independent runs inside one experiment")
      ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dhs::kExitUsage;
  }

  dhs::Scenario scenario;
  try {
    scenario.kind = dhs::parse_scenario_kind(kind);
    scenario.config = dhs::config::load(config_path);
  } catch (const std::exception& e) {
    std::cerr << "dhs: " << e.what() << '\n';
    return dhs::kExitUsage;
  }
  scenario.outdir = outdir.empty() ? std::filesystem::path("runs") / kind : std::filesystem::path(outdir);
  scenario.seed = seed;
  scenario.overwrite = overwrite;
  scenario.workers = workers;
  return dhs::run(scenario);
}
