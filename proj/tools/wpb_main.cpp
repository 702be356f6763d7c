#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "wpb/errors.hpp"
#include "wpb/scenario.hpp"

namespace {

// --out beats WPB_OUT beats the config's output_dir.
std::string resolve_output_dir(const wpb::ScenarioConfig& cfg,
                               const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("WPB_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  return cfg.output_dir;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"wpb - generalized Gaussian wave-packet dynamics"};
  app.require_subcommand(1);

  std::string config_path, cli_out;
  int frames_every = 0;
  bool quiet = false;
  int levels = 4;

  auto* run = app.add_subcommand("run", "execute a scenario config");
  run->add_option("config", config_path, "scenario config (JSON)")->required();
  run->add_option("--out", cli_out, "output directory (overrides WPB_OUT and the config)");
  run->add_option("--frames-every", frames_every, "frame stride in grid steps");
  run->add_flag("--quiet", quiet, "suppress the summary printout");

  auto* validate = app.add_subcommand("validate", "parse and validate a config");
  validate->add_option("config", config_path, "scenario config (JSON)")->required();

  auto* spectrum = app.add_subcommand("spectrum", "low-lying levels of the scenario potential");
  spectrum->add_option("config", config_path, "scenario config (JSON)")->required();
  spectrum->add_option("--levels", levels, "number of levels")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  if (validate->parsed()) {
    wpb::parse_config(config_path);
    std::printf("OK: %s\n", config_path.c_str());
    return 0;
  }
  if (spectrum->parsed()) {
    const auto cfg = wpb::parse_config(config_path);
    const auto energies = wpb::spectrum_levels(cfg, levels);
    std::printf("level,energy\n");
    for (std::size_t i = 0; i < energies.size(); ++i) {
      std::printf("%zu,%.12g\n", i, energies[i]);
    }
    return 0;
  }

  auto cfg = wpb::parse_config(config_path);
  if (frames_every > 0) cfg.frames_every = frames_every;
  wpb::run_scenario(cfg, resolve_output_dir(cfg, cli_out), quiet);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const wpb::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const wpb::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
