#include "wpb/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "digest.hpp"
#include "svg_plot.hpp"
#include "wpb/errors.hpp"
#include "wpb/propagators.hpp"
#include "wpb/tunneling.hpp"

namespace wpb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------- config

const std::map<std::string, Scenario>& scenario_names() {
  static const std::map<std::string, Scenario> names{
      {"free", Scenario::kFree},
      {"harmonic", Scenario::kHarmonic},
      {"coherent", Scenario::kCoherent},
      {"anharmonic", Scenario::kAnharmonic},
      {"double_well_stationary", Scenario::kDoubleWellStationary},
      {"instanton", Scenario::kInstanton},
      {"tunneling_dynamics", Scenario::kTunnelingDynamics},
      {"compare", Scenario::kCompare},
  };
  return names;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

[[noreturn]] void unknown_key(const std::string& key, const std::string& where,
                              const std::vector<std::string>& known) {
  std::string best;
  std::size_t best_d = 5;
  for (const auto& k : known) {
    const std::size_t d = edit_distance(key, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  std::string msg = "config: unknown key '" + key + "' in " + where;
  if (!best.empty()) msg += "; did you mean '" + best + "'?";
  throw config_error(msg);
}

void check_keys(const json& obj, const std::string& where,
                const std::vector<std::string>& known) {
  for (const auto& item : obj.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      unknown_key(item.key(), where, known);
    }
  }
}

double get_number(const json& obj, const std::string& where, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw config_error("config: '" + where + "." + key + "' must be a number");
  }
  return obj[key].get<double>();
}

int get_integer(const json& obj, const std::string& where, const char* key,
                int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw config_error("config: '" + where + "." + key + "' must be an integer");
  }
  return obj[key].get<int>();
}

bool get_boolean(const json& obj, const std::string& where, const char* key,
                 bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    throw config_error("config: '" + where + "." + key + "' must be a boolean");
  }
  return obj[key].get<bool>();
}

void require_positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw config_error(std::string("config: '") + key + "' must be positive and finite");
  }
}

// ----------------------------------------------------------- formatting

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string frame_csv(double t, const std::vector<double>& xs,
                      const std::vector<cplx>& psi) {
  std::string out = "t,x,re_psi,im_psi\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += fmt(t) + "," + fmt(xs[i]) + "," + fmt(psi[i].real()) + "," +
           fmt(psi[i].imag()) + "\n";
  }
  return out;
}

std::string frame_name(const char* stem, int index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "frames/%s_%06d.csv", stem, index);
  return buf;
}

// ------------------------------------------------------------- outputs

class OutputCollector {
 public:
  explicit OutputCollector(fs::path root) : root_(std::move(root)) {}

  void write(const std::string& rel, const std::string& content) {
    const fs::path full = root_ / rel;
    std::error_code ec;
    fs::create_directories(full.parent_path(), ec);
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open output file: " + full.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw io_error("failed writing output file: " + full.string());
    files_.push_back({rel, content.size(), fnv1a64_hex(content)});
  }

  // Manifest is written last, atomically (write-then-rename), and is not
  // listed among its own outputs.
  void finalize_manifest(const ScenarioConfig& cfg, const std::string& scenario) {
    std::sort(files_.begin(), files_.end(),
              [](const OutputFile& a, const OutputFile& b) { return a.path < b.path; });
    json m;
    m["scenario"] = scenario;
    m["config_digest"] = cfg.config_digest;
    m["complete"] = true;
    m["outputs"] = json::array();
    for (const auto& f : files_) {
      m["outputs"].push_back({{"path", f.path}, {"bytes", f.bytes}, {"digest", f.digest}});
    }
    const std::string content = m.dump(2) + "\n";
    const fs::path tmp = root_ / "manifest.json.tmp";
    const fs::path dst = root_ / "manifest.json";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw io_error("cannot open " + tmp.string());
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.close();
      if (!out) throw io_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, dst, ec);
    if (ec) throw io_error("cannot finalize manifest: " + ec.message());
  }

  const std::vector<OutputFile>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<OutputFile> files_;
};

std::vector<double> grid_points(const GridSpec& spec) {
  std::vector<double> xs(static_cast<std::size_t>(spec.n_points));
  for (int j = 0; j < spec.n_points; ++j) xs[static_cast<std::size_t>(j)] = spec.x(j);
  return xs;
}

std::vector<cplx> sample_packet_values(const GeneralizedGaussian& g,
                                       const std::vector<double>& xs) {
  std::vector<cplx> psi(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) psi[i] = evaluate(g, xs[i]);
  return psi;
}

// L2 distance between psi_b and exp(i phase) psi_a for unit-norm packets.
// The overlap form 2 - 2 Re<.|.> bottoms out at sqrt(machine eps) for
// near-identical packets, so small parameter differences switch to the
// first-order variation, whose Gaussian moments are stable:
//   d(ln psi) = dL + i dp u - i p dx + gamma u dx - dgamma u^2/2.
double packet_l2_distance(const GeneralizedGaussian& a, const GeneralizedGaussian& b,
                          double phase) {
  const double dx = b.center - a.center;
  const double dp = b.momentum - a.momentum;
  const cplx dg = b.width - a.width;
  const cplx dl = b.log_prefactor - a.log_prefactor - cplx{0.0, phase};
  const double small = std::max({std::abs(dx), std::abs(dp), std::abs(dg), std::abs(dl)});
  if (small < 1e-6) {
    const double u2 = 1.0 / (2.0 * a.width.real());
    const double u4 = 3.0 * u2 * u2;
    const cplx ca = dl - kI * a.momentum * dx;
    const cplx cb = kI * dp + a.width * dx;
    const cplx cc = -0.5 * dg;
    const double d2 = std::norm(ca) + std::norm(cb) * u2 + std::norm(cc) * u4 +
                      2.0 * (ca * std::conj(cc)).real() * u2;
    return std::sqrt(std::max(0.0, d2));
  }
  const cplx ov = std::exp(cplx{0.0, phase}) * overlap(a, b);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * ov.real()));
}

std::vector<double> frame_times(const ScenarioConfig& cfg) {
  const double frame_dt = cfg.frames_every * cfg.grid.dt;
  std::vector<double> times{0.0};
  for (int j = 1; j * frame_dt <= cfg.t_final * (1.0 + 1e-12); ++j) {
    times.push_back(j * frame_dt);
  }
  return times;
}

void add_wave_plot(OutputCollector& out, const std::string& title,
                   const std::vector<double>& xs, const std::vector<cplx>& psi) {
  std::vector<SvgSeries> series(3);
  series[0].label = "re";
  series[0].color = "#1f77b4";
  series[1].label = "im";
  series[1].color = "#d62728";
  series[2].label = "|psi|^2";
  series[2].color = "#2ca02c";
  for (const auto& z : psi) {
    series[0].ys.push_back(z.real());
    series[1].ys.push_back(z.imag());
    series[2].ys.push_back(std::norm(z));
  }
  out.write("plot.svg", render_svg_plot(title, xs, series));
}

// --------------------------------------------------------- brigade glue

struct ProjectedRun {
  BasisSet basis;
  SubspaceTransform transform;
  Eigen::VectorXcd init;
};

ProjectedRun prepare_projected_run(const ScenarioConfig& cfg,
                                   const PotentialSpec& pot) {
  auto traj = generate_trajectory_basis(cfg.initial_packet(), pot, cfg.brigade);
  std::vector<GeneralizedGaussian> kept;
  for (std::size_t i = 0; i < traj.size(); i += static_cast<std::size_t>(cfg.brigade.thin_every)) {
    kept.push_back(traj[i]);
  }
  ProjectedRun run{assemble_matrices(kept, pot), {}, {}};
  run.transform = significant_subspace(run.basis, cfg.brigade.significance_eps);
  run.init = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(kept.size()));
  run.init(0) = cplx{1.0, 0.0};
  return run;
}

}  // namespace

PotentialSpec ScenarioConfig::potential() const {
  switch (scenario) {
    case Scenario::kFree:
      return PotentialSpec::free_particle(m);
    case Scenario::kHarmonic:
    case Scenario::kCoherent:
      return PotentialSpec::harmonic(m, omega);
    case Scenario::kAnharmonic:
    case Scenario::kCompare:
      return PotentialSpec::quartic(m, lambda);
    case Scenario::kDoubleWellStationary:
    case Scenario::kInstanton:
    case Scenario::kTunnelingDynamics:
      return PotentialSpec::double_well(m, lambda, f);
  }
  throw std::invalid_argument("unknown scenario");
}

GeneralizedGaussian ScenarioConfig::initial_packet() const {
  return GeneralizedGaussian::normalized(center, momentum, {gamma_re, gamma_im});
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string raw = buffer.str();

  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config: top level must be a JSON object");

  check_keys(j, "the top level",
             {"scenario", "potential", "packet", "brigade", "grid", "time", "output_dir"});

  ScenarioConfig cfg;
  cfg.config_digest = fnv1a64_hex(raw);

  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    throw config_error("config: 'scenario' is required and must be a string");
  }
  const std::string name = j["scenario"].get<std::string>();
  const auto& names = scenario_names();
  const auto it = names.find(name);
  if (it == names.end()) {
    std::vector<std::string> known;
    for (const auto& [k, v] : names) known.push_back(k);
    unknown_key(name, "'scenario'", known);
  }
  cfg.scenario = it->second;

  if (j.contains("potential")) {
    const auto& p = j["potential"];
    if (!p.is_object()) throw config_error("config: 'potential' must be an object");
    check_keys(p, "'potential'", {"m", "omega", "lambda", "f"});
    cfg.m = get_number(p, "potential", "m", cfg.m);
    cfg.omega = get_number(p, "potential", "omega", cfg.omega);
    cfg.lambda = get_number(p, "potential", "lambda", cfg.lambda);
    cfg.f = get_number(p, "potential", "f", cfg.f);
  }
  if (j.contains("packet")) {
    const auto& p = j["packet"];
    if (!p.is_object()) throw config_error("config: 'packet' must be an object");
    check_keys(p, "'packet'", {"center", "momentum", "gamma_re", "gamma_im"});
    cfg.center = get_number(p, "packet", "center", cfg.center);
    cfg.momentum = get_number(p, "packet", "momentum", cfg.momentum);
    cfg.gamma_re = get_number(p, "packet", "gamma_re", cfg.gamma_re);
    cfg.gamma_im = get_number(p, "packet", "gamma_im", cfg.gamma_im);
  }
  if (j.contains("brigade")) {
    const auto& b = j["brigade"];
    if (!b.is_object()) throw config_error("config: 'brigade' must be an object");
    check_keys(b, "'brigade'",
               {"dt", "n_steps", "significance_eps", "renormalize_each_step", "thin_every"});
    cfg.brigade.dt = get_number(b, "brigade", "dt", cfg.brigade.dt);
    cfg.brigade.n_steps = get_integer(b, "brigade", "n_steps", cfg.brigade.n_steps);
    cfg.brigade.significance_eps =
        get_number(b, "brigade", "significance_eps", cfg.brigade.significance_eps);
    cfg.brigade.renormalize_each_step =
        get_boolean(b, "brigade", "renormalize_each_step", cfg.brigade.renormalize_each_step);
    cfg.brigade.thin_every = get_integer(b, "brigade", "thin_every", cfg.brigade.thin_every);
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) throw config_error("config: 'grid' must be an object");
    check_keys(g, "'grid'", {"x_min", "x_max", "n_points", "dt"});
    cfg.grid.x_min = get_number(g, "grid", "x_min", cfg.grid.x_min);
    cfg.grid.x_max = get_number(g, "grid", "x_max", cfg.grid.x_max);
    cfg.grid.n_points = get_integer(g, "grid", "n_points", cfg.grid.n_points);
    cfg.grid.dt = get_number(g, "grid", "dt", cfg.grid.dt);
  }
  if (j.contains("time")) {
    const auto& t = j["time"];
    if (!t.is_object()) throw config_error("config: 'time' must be an object");
    check_keys(t, "'time'", {"t_final", "frames_every"});
    cfg.t_final = get_number(t, "time", "t_final", cfg.t_final);
    cfg.frames_every = get_integer(t, "time", "frames_every", cfg.frames_every);
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) {
      throw config_error("config: 'output_dir' must be a string");
    }
    cfg.output_dir = j["output_dir"].get<std::string>();
  }

  // Range validation, naming the offending key.
  require_positive(cfg.m, "potential.m");
  if (cfg.scenario == Scenario::kHarmonic || cfg.scenario == Scenario::kCoherent) {
    require_positive(cfg.omega, "potential.omega");
  }
  if (cfg.scenario == Scenario::kAnharmonic || cfg.scenario == Scenario::kCompare ||
      cfg.scenario == Scenario::kDoubleWellStationary ||
      cfg.scenario == Scenario::kInstanton ||
      cfg.scenario == Scenario::kTunnelingDynamics) {
    require_positive(cfg.lambda, "potential.lambda");
  }
  if (cfg.scenario == Scenario::kDoubleWellStationary ||
      cfg.scenario == Scenario::kInstanton ||
      cfg.scenario == Scenario::kTunnelingDynamics) {
    require_positive(cfg.f, "potential.f");
  }
  require_positive(cfg.gamma_re, "packet.gamma_re");
  if (!std::isfinite(cfg.center)) throw config_error("config: 'packet.center' must be finite");
  if (!std::isfinite(cfg.momentum)) throw config_error("config: 'packet.momentum' must be finite");
  if (!std::isfinite(cfg.gamma_im)) throw config_error("config: 'packet.gamma_im' must be finite");
  require_positive(cfg.brigade.dt, "brigade.dt");
  if (cfg.brigade.n_steps < 1) throw config_error("config: 'brigade.n_steps' must be >= 1");
  if (!(cfg.brigade.significance_eps > 0.0 && cfg.brigade.significance_eps < 1.0)) {
    throw config_error("config: 'brigade.significance_eps' must be in (0, 1)");
  }
  if (cfg.brigade.thin_every < 1) throw config_error("config: 'brigade.thin_every' must be >= 1");
  if (!(cfg.grid.x_max > cfg.grid.x_min)) {
    throw config_error("config: 'grid.x_max' must exceed 'grid.x_min'");
  }
  if (cfg.grid.n_points < 16) throw config_error("config: 'grid.n_points' must be >= 16");
  require_positive(cfg.grid.dt, "grid.dt");
  require_positive(cfg.t_final, "time.t_final");
  if (cfg.frames_every < 1) throw config_error("config: 'time.frames_every' must be >= 1");
  return cfg;
}

namespace {

// --------------------------------------------------------- scenarios

void run_closed_form(const ScenarioConfig& cfg, OutputCollector& out, json& metrics) {
  const auto g0 = cfg.initial_packet();
  const auto xs = grid_points(cfg.grid);
  const auto times = frame_times(cfg);

  const bool harmonic = cfg.scenario != Scenario::kFree;
  const bool eigenwidth =
      harmonic && std::abs(cfg.gamma_re - cfg.m * cfg.omega) < 1e-12 &&
      std::abs(cfg.gamma_im) < 1e-12;

  double norm_drift = 0.0;
  double eigen_dev = 0.0;
  GeneralizedGaussian last = g0;
  std::string trajectory = "t,x,p,action_phase\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const auto g = harmonic ? harmonic_evolve(g0, cfg.m, cfg.omega, t)
                            : free_evolve(g0, cfg.m, t);
    last = g;
    out.write(frame_name("frame", static_cast<int>(i)), frame_csv(t, xs, sample_packet_values(g, xs)));
    norm_drift = std::max(norm_drift, std::abs(packet_norm(g) - 1.0));
    if (eigenwidth) {
      eigen_dev = std::max(eigen_dev, packet_l2_distance(g0, g, -0.5 * cfg.omega * t));
    }
    if (cfg.scenario == Scenario::kCoherent) {
      const auto pt = coherent_trajectory(cfg.center, cfg.momentum, cfg.m, cfg.omega, t);
      trajectory += fmt(pt.t) + "," + fmt(pt.x) + "," + fmt(pt.p) + "," +
                    fmt(pt.action_phase) + "\n";
    }
  }
  metrics["norm_drift_max"] = norm_drift;
  metrics["final_center"] = last.center;
  metrics["final_width_re"] = last.width.real();
  metrics["final_width_im"] = last.width.imag();
  if (harmonic) {
    const auto period = harmonic_evolve(g0, cfg.m, cfg.omega, 2.0 * kPi / cfg.omega);
    metrics["gamma_periodicity_residual"] = std::abs(period.width - g0.width);
  }
  if (eigenwidth) metrics["max_l2_vs_phase_rotated_initial"] = eigen_dev;
  if (cfg.scenario == Scenario::kCoherent) {
    out.write("trajectory.csv", trajectory);
    double residual = 0.0;
    const double e0 = std::pow(cfg.m * cfg.omega * cfg.center, 2) + cfg.momentum * cfg.momentum;
    for (double t : times) {
      const auto pt = coherent_trajectory(cfg.center, cfg.momentum, cfg.m, cfg.omega, t);
      residual = std::max(residual,
                          std::abs(std::pow(cfg.m * cfg.omega * pt.x, 2) + pt.p * pt.p - e0));
    }
    metrics["energy_conservation_residual"] = residual;
  }
  add_wave_plot(out, "wavefunction at t = " + fmt(times.back()), xs,
                sample_packet_values(last, xs));
}

void run_projected(const ScenarioConfig& cfg, OutputCollector& out, json& metrics) {
  const auto pot = cfg.potential();
  const auto xs = grid_points(cfg.grid);
  const auto times = frame_times(cfg);
  auto run = prepare_projected_run(cfg, pot);
  metrics["retained_modes"] = run.transform.retained_modes;
  metrics["basis_size"] = static_cast<double>(run.basis.packets.size());

  const auto h = projected_hamiltonian(run.basis, run.transform);
  const Eigen::VectorXcd a0 = run.transform.matrix.adjoint() * (run.basis.gram * run.init);
  const double norm0 = a0.norm();
  const double e0 = (a0.adjoint() * h * a0)(0).real();
  metrics["initial_mode_norm"] = norm0;
  metrics["initial_energy"] = e0;

  const bool with_oracle = cfg.scenario == Scenario::kCompare;
  GridState oracle;
  if (with_oracle) oracle = init_from_packet(cfg.initial_packet(), cfg.grid);

  double norm_drift = 0.0, energy_drift = 0.0, l2_max = 0.0;
  json series_t = json::array(), series_l2 = json::array();
  std::vector<cplx> last_psi;
  GridState last_oracle;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const auto ct = project_and_exponentiate(run.basis, run.transform, run.init, t);
    const auto psi = reconstruct(run.basis.packets, ct, xs);
    out.write(frame_name("frame", static_cast<int>(i)), frame_csv(t, xs, psi));
    last_psi = psi;

    const Eigen::VectorXcd at = run.transform.matrix.adjoint() * (run.basis.gram * ct);
    norm_drift = std::max(norm_drift, std::abs(at.norm() - norm0));
    energy_drift = std::max(energy_drift, std::abs((at.adjoint() * h * at)(0).real() - e0));

    if (with_oracle) {
      if (i > 0) oracle = evolve_real_time(oracle, pot, times[i] - times[i - 1]);
      out.write(frame_name("oracle", static_cast<int>(i)),
                frame_csv(t, xs, oracle.amplitudes));
      double acc = 0.0;
      for (std::size_t k = 0; k < psi.size(); ++k) acc += std::norm(psi[k] - oracle.amplitudes[k]);
      const double l2 = std::sqrt(acc * cfg.grid.dx());
      l2_max = std::max(l2_max, l2);
      series_t.push_back(t);
      series_l2.push_back(l2);
      last_oracle = oracle;
    }
  }
  metrics["coeff_norm_drift_max"] = norm_drift;
  metrics["energy_drift_max"] = energy_drift;
  if (with_oracle) {
    metrics["l2_error_max"] = l2_max;
    metrics["l2_error_series_t"] = series_t;
    metrics["l2_error_series"] = series_l2;

    std::vector<SvgSeries> series(2);
    series[0].label = "projected re";
    series[0].color = "#1f77b4";
    series[1].label = "reference re";
    series[1].color = "#d62728";
    series[1].dashed = true;
    for (std::size_t k = 0; k < last_psi.size(); ++k) {
      series[0].ys.push_back(last_psi[k].real());
      series[1].ys.push_back(last_oracle.amplitudes[k].real());
    }
    out.write("plot.svg",
              render_svg_plot("projected vs reference at t = " + fmt(times.back()), xs, series));
  } else {
    add_wave_plot(out, "wavefunction at t = " + fmt(times.back()), xs, last_psi);
  }
}

void run_double_well_stationary(const ScenarioConfig& cfg, OutputCollector& out,
                                json& metrics) {
  const auto pot = cfg.potential();
  const auto xs = grid_points(cfg.grid);
  const auto [left, right] = find_stationary_gaussians(pot);
  const auto gl = well_packet(left);
  const auto gr = well_packet(right);
  out.write(frame_name("frame", 0), frame_csv(0.0, xs, sample_packet_values(gl, xs)));
  out.write(frame_name("frame", 1), frame_csv(0.0, xs, sample_packet_values(gr, xs)));

  metrics["left_center"] = left.center;
  metrics["right_center"] = right.center;
  metrics["width"] = left.width;
  metrics["inward_offset"] = pot.f - std::abs(left.center);
  metrics["force_residual"] = std::abs(gaussian_average(pot, 1, left.center, left.width));
  metrics["width_residual"] =
      std::abs(left.width - std::sqrt(pot.m * gaussian_average(pot, 2, left.center, left.width)));

  std::vector<SvgSeries> series(3);
  series[0].label = "left |psi|^2";
  series[0].color = "#1f77b4";
  series[1].label = "right |psi|^2";
  series[1].color = "#d62728";
  series[2].label = "V(x) (scaled)";
  series[2].color = "#7f7f7f";
  series[2].dashed = true;
  double vmax = 0.0;
  for (double x : xs) vmax = std::max(vmax, value(pot, x));
  for (double x : xs) {
    series[0].ys.push_back(std::norm(evaluate(gl, x)));
    series[1].ys.push_back(std::norm(evaluate(gr, x)));
    series[2].ys.push_back(value(pot, x) / vmax);
  }
  out.write("plot.svg", render_svg_plot("stationary well packets", xs, series));
}

void run_instanton(const ScenarioConfig& cfg, OutputCollector& out, json& metrics) {
  const auto pot = cfg.potential();
  const auto [left, right] = find_stationary_gaussians(pot);
  const int n_samples = std::max(3, cfg.brigade.n_steps);
  const auto path = instanton_trajectory(pot, left, n_samples);

  const double e_ref = -value(pot, std::abs(left.center));
  double max_residual = 0.0;
  std::string table = "tau,x,p,energy_residual\n";
  std::vector<double> taus, positions;
  for (const auto& s : path.samples) {
    const double res = s.p * s.p / (2.0 * pot.m) - value(pot, s.x) - e_ref;
    max_residual = std::max(max_residual, std::abs(res));
    table += fmt(s.tau) + "," + fmt(s.x) + "," + fmt(s.p) + "," + fmt(res) + "\n";
    taus.push_back(s.tau);
    positions.push_back(s.x);
  }
  out.write("trajectory.csv", table);
  metrics["max_energy_residual"] = max_residual;
  metrics["turning_point"] = std::abs(left.center);
  metrics["tau_span"] = path.samples.back().tau - path.samples.front().tau;
  metrics["n_samples"] = static_cast<double>(path.samples.size());

  std::vector<SvgSeries> series(1);
  series[0].label = "x(tau)";
  series[0].color = "#1f77b4";
  series[0].ys = positions;
  out.write("plot.svg", render_svg_plot("instanton trajectory", taus, series));
}

void run_tunneling_dynamics(const ScenarioConfig& cfg, OutputCollector& out,
                            json& metrics) {
  const auto pot = cfg.potential();
  const auto xs = grid_points(cfg.grid);
  const auto wells = find_stationary_gaussians(pot);
  const int n_path = std::max(3, cfg.brigade.n_steps);
  const auto packets = instanton_augmented_basis(pot, wells, n_path, MomentumMode::kFrozen);

  const auto basis = assemble_matrices(packets, pot);
  const auto tr = significant_subspace(basis, cfg.brigade.significance_eps);
  const auto h = projected_hamiltonian(basis, tr);
  const auto split = splitting_and_transfer(h, {0}, {static_cast<int>(packets.size()) - 1});
  metrics["delta_e"] = split.delta_e;
  metrics["transfer_time"] = split.transfer_time;
  metrics["retained_modes"] = tr.retained_modes;
  metrics["basis_size"] = static_cast<double>(packets.size());

  Eigen::VectorXcd init = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(packets.size()));
  init(0) = cplx{1.0, 0.0};
  const Eigen::VectorXcd a0 = tr.matrix.adjoint() * (basis.gram * init);
  const double norm0 = a0.norm();

  const auto times = frame_times(cfg);
  std::string occupancy = "t,p_left\n";
  std::vector<double> pl_series;
  double norm_drift = 0.0;
  std::vector<cplx> last_psi;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const auto ct = project_and_exponentiate(basis, tr, init, t);
    const double pl = std::norm((basis.gram * ct)(0));
    pl_series.push_back(pl);
    occupancy += fmt(t) + "," + fmt(pl) + "\n";
    const Eigen::VectorXcd at = tr.matrix.adjoint() * (basis.gram * ct);
    norm_drift = std::max(norm_drift, std::abs(at.norm() - norm0));
    const auto psi = reconstruct(packets, ct, xs);
    out.write(frame_name("frame", static_cast<int>(i)), frame_csv(t, xs, psi));
    last_psi = psi;
  }
  out.write("occupancy.csv", occupancy);
  metrics["coeff_norm_drift_max"] = norm_drift;

  // Deepest point of the left-well occupancy (small high-mode wiggles sit
  // on the slow two-level transfer, so a first-local-minimum rule is not
  // robust). Meaningful when the window covers about one transfer time.
  std::size_t min_idx = 0;
  for (std::size_t i = 1; i < pl_series.size(); ++i) {
    if (pl_series[i] < pl_series[min_idx]) min_idx = i;
  }
  if (min_idx > 0) {
    metrics["half_period_measured"] = times[min_idx];
    metrics["half_period_over_pi_delta"] = times[min_idx] / split.transfer_time;
  }

  std::vector<SvgSeries> series(1);
  series[0].label = "left-well probability";
  series[0].color = "#1f77b4";
  series[0].ys = pl_series;
  out.write("plot.svg", render_svg_plot("left-well occupancy", times, series));
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                       bool quiet) {
  OutputCollector out{fs::path(out_dir)};
  json metrics;

  const char* scenario_name = nullptr;
  for (const auto& [k, v] : scenario_names()) {
    if (v == cfg.scenario) scenario_name = k.c_str();
  }

  json meta;
  meta["scenario"] = scenario_name;
  meta["config_digest"] = cfg.config_digest;
  meta["grid"] = {{"x_min", cfg.grid.x_min},
                  {"x_max", cfg.grid.x_max},
                  {"n_points", cfg.grid.n_points},
                  {"dt", cfg.grid.dt}};
  out.write("metadata.json", meta.dump(2) + "\n");

  switch (cfg.scenario) {
    case Scenario::kFree:
    case Scenario::kHarmonic:
    case Scenario::kCoherent:
      run_closed_form(cfg, out, metrics);
      break;
    case Scenario::kAnharmonic:
    case Scenario::kCompare:
      run_projected(cfg, out, metrics);
      break;
    case Scenario::kDoubleWellStationary:
      run_double_well_stationary(cfg, out, metrics);
      break;
    case Scenario::kInstanton:
      run_instanton(cfg, out, metrics);
      break;
    case Scenario::kTunnelingDynamics:
      run_tunneling_dynamics(cfg, out, metrics);
      break;
  }

  out.write("metrics.json", metrics.dump(2) + "\n");
  out.finalize_manifest(cfg, scenario_name);

  RunReport report;
  report.outputs = out.files();
  for (const auto& item : metrics.items()) {
    if (item.value().is_number()) {
      report.metrics[item.key()] = item.value().get<double>();
    }
  }
  if (!quiet) {
    std::printf("scenario %s: %zu output files in %s\n", scenario_name,
                report.outputs.size() + 1, out_dir.c_str());
    for (const auto& [k, v] : report.metrics) {
      std::printf("  %s = %.12g\n", k.c_str(), v);
    }
  }
  return report;
}

std::vector<double> spectrum_levels(const ScenarioConfig& cfg, int k) {
  const auto pairs = lowest_eigenpairs(cfg.potential(), cfg.grid, k);
  std::vector<double> levels;
  levels.reserve(pairs.size());
  for (const auto& p : pairs) levels.push_back(p.energy);
  return levels;
}

}  // namespace wpb
