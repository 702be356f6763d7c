#pragma once

#include <map>
#include <string>
#include <vector>

#include "wpb/brigade.hpp"
#include "wpb/grid.hpp"
#include "wpb/packet.hpp"
#include "wpb/potential.hpp"

namespace wpb {

enum class Scenario {
  kFree,
  kHarmonic,
  kCoherent,
  kAnharmonic,
  kDoubleWellStationary,
  kInstanton,
  kTunnelingDynamics,
  kCompare,
};

// Fully validated scenario description. parse_config applies documented
// defaults (grid [-12,12] x 1024, grid dt 1e-3, significance_eps 1e-8)
// and rejects unknown keys with a nearest-key suggestion.
struct ScenarioConfig {
  Scenario scenario = Scenario::kHarmonic;

  // Potential parameters (used per scenario kind).
  double m = 1.0;
  double omega = 1.0;
  double lambda = 0.25;
  double f = 1.4;

  // Initial packet.
  double center = 0.0;
  double momentum = 0.0;
  double gamma_re = 1.0;
  double gamma_im = 0.0;

  BrigadeConfig brigade;
  GridSpec grid;

  double t_final = 5.0;
  int frames_every = 250;  // frame every frames_every * grid.dt

  std::string output_dir = "wpb_out";
  std::string config_digest;  // digest of the raw config bytes

  PotentialSpec potential() const;
  GeneralizedGaussian initial_packet() const;
};

ScenarioConfig parse_config(const std::string& path);

struct OutputFile {
  std::string path;  // relative to the output directory
  std::size_t bytes = 0;
  std::string digest;
};

struct RunReport {
  std::map<std::string, double> metrics;
  std::vector<OutputFile> outputs;  // sorted by path; manifest content
};

// Executes the scenario, writing frames, metrics, plots and the manifest
// (last, atomically) under out_dir. Quiet suppresses the stdout summary.
RunReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                       bool quiet = false);

// Low-lying spectrum of the scenario's potential on its grid.
std::vector<double> spectrum_levels(const ScenarioConfig& cfg, int k);

}  // namespace wpb
