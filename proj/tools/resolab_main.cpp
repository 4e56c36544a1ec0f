#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "resolab/errors.hpp"
#include "resolab/harness.hpp"

using namespace resolab;

int main(int argc, char** argv) {
  CLI::App app{"resolab: resonance asymptotics laboratory"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run a sweep from a config file");
  std::string config_path;
  std::string mode_override, out_override;
  int jobs_override = -1;
  bool seedless = false;
  run_cmd->add_option("config", config_path, "config file (JSON)")->required();
  run_cmd->add_option("--mode", mode_override,
                      "thm1-check | thm2-check | identities-only | decoupled-oracle");
  run_cmd->add_option("--out", out_override, "output directory");
  run_cmd->add_option("--jobs", jobs_override, "worker threads (0 = auto)");
  run_cmd->add_flag("--seedless", seedless, "argument-principle global search instead of seeds");

  CLI11_PARSE(app, argc, argv);

  try {
    SweepConfig cfg = SweepConfig::from_json_file(config_path);
    if (!mode_override.empty()) cfg.mode = mode_from_name(mode_override);
    if (const char* env_out = std::getenv("RESOLAB_OUT")) cfg.out_dir = env_out;
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (jobs_override >= 0) cfg.jobs = jobs_override;
    if (seedless) cfg.seedless = true;
    cfg.check();

    const SweepReport rep = run(cfg);
    emit(rep, cfg.out_dir);

    for (const auto& c : rep.identity_checks)
      std::printf("[%s] %-40s value %.6e bound %.6e\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                  c.value, c.bound);
    for (const auto& [name, fit] : rep.slopes)
      std::printf("slope %-24s %.4f (r2 %.4f, n %d)\n", name.c_str(), fit.slope, fit.r2,
                  fit.n_used);
    std::printf("%s: %s -> %s\n", mode_name(rep.config.mode), rep.pass ? "PASS" : "FAIL",
                cfg.out_dir.c_str());
    return rep.pass ? 0 : 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 4;
  }
}
