// Command-line front end. Precedence: flags > --config file > $IPF_OUTPUT_DIR > defaults.
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ipf/cli.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> output_dir, format, method, schedule, stats, model_type;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> n_paths;
  std::optional<double> dt, gamma, alpha1, tau, window, theta, sigma, horizon;
  std::optional<int> n, workers;
  std::optional<std::vector<double>> spectrum, z0;

  void apply(ipf::cli::RunConfig& c) const {
    if (output_dir) c.output_dir = *output_dir;
    if (format) c.format = *format;
    if (method) c.method = *method;
    if (schedule) c.schedule_path = *schedule;
    if (stats) c.stats_path = *stats;
    if (model_type) c.model.type = *model_type;
    if (seed) c.seed = *seed;
    if (n_paths) c.n_paths = *n_paths;
    if (dt) c.dt = *dt;
    if (gamma) c.gamma = *gamma;
    if (alpha1) c.alpha1 = *alpha1;
    if (tau) c.tau = *tau;
    if (window) c.window = *window;
    if (theta) c.model.theta = *theta;
    if (sigma) c.model.sigma = *sigma;
    if (horizon) c.model.T = *horizon;
    if (n) c.n = *n;
    if (workers) c.workers = *workers;
    if (spectrum) c.spectrum = *spectrum;
    if (z0) c.z0 = *z0;
  }
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--output-dir", o.output_dir, "Output directory (default $IPF_OUTPUT_DIR or .)");
  cmd->add_option("--format", o.format, "json or csv");
}

void add_stochastic(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "RNG seed (required)");
  cmd->add_option("--n-paths", o.n_paths, "Number of sample paths");
  cmd->add_option("--dt", o.dt, "Time step (0: 1e-3 of the horizon)");
  cmd->add_option("--workers", o.workers, "Worker threads (0: hardware concurrency)");
  cmd->add_option("--model", o.model_type, "ou, linear or spectrum");
  cmd->add_option("--theta", o.theta, "OU mean-reversion rate");
  cmd->add_option("--sigma", o.sigma, "Noise intensity");
  cmd->add_option("--horizon", o.horizon, "Model end time T");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy functional and information path functional toolkit"};
  app.require_subcommand(1);
  Overrides o;

  auto* simulate = app.add_subcommand("simulate", "Simulate an ensemble and write its statistics");
  auto* entropy = app.add_subcommand("entropy", "Monte Carlo and covariance-form entropy functional");
  auto* identify = app.add_subcommand("identify", "Identify the macromodel operator at a moment");
  auto* schedule = app.add_subcommand("schedule", "Equalization chain and control schedule");
  auto* invariants = app.add_subcommand("invariants", "Invariant set and triplet accounting at gamma");
  auto* network = app.add_subcommand("network", "Build the information network");
  auto* diagnose = app.add_subcommand("diagnose", "LCE and production-rate diagnostics of a schedule");
  auto* reproduce = app.add_subcommand("reproduce", "Recompute every quoted constant");
  auto* pipeline = app.add_subcommand("pipeline", "simulate, identify, schedule, network, diagnose");

  for (auto* cmd : app.get_subcommands({})) add_common(cmd, o);
  for (auto* cmd : {simulate, entropy, identify, pipeline}) add_stochastic(cmd, o);
  identify->add_option("--tau", o.tau, "Identification moment (default: horizon)");
  identify->add_option("--method", o.method,
                       "reduced-control, covariance-ratio, dispersion-window, closed-loop or all");
  identify->add_option("--window", o.window, "Dispersion window (0: constraint window)");
  for (auto* cmd : {invariants, network, schedule, pipeline}) cmd->add_option("--gamma", o.gamma, "gamma");
  for (auto* cmd : {network, schedule, pipeline}) {
    cmd->add_option("--n", o.n, "Number of modes");
    cmd->add_option("--alpha1", o.alpha1, "Largest starting eigenvalue");
  }
  schedule->add_option("--spectrum", o.spectrum, "Explicit ranged spectrum");
  schedule->add_option("--z0", o.z0, "Starting state");
  diagnose->add_option("--schedule", o.schedule, "Stored schedule JSON");
  diagnose->add_option("--stats", o.stats, "Stored ensemble statistics JSON");
  diagnose->add_option("--tau", o.tau, "Moment for the ensemble production rate");

  CLI11_PARSE(app, argc, argv);
  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();

  try {
    ipf::cli::RunConfig cfg = o.config.empty() ? ipf::cli::RunConfig{} : ipf::cli::load_config(o.config);
    o.apply(cfg);
    using Fn = int (*)(const ipf::cli::RunConfig&, std::ostream&);
    const std::map<std::string, Fn> table = {
        {"simulate", ipf::cli::cmd_simulate},   {"entropy", ipf::cli::cmd_entropy},
        {"identify", ipf::cli::cmd_identify},   {"schedule", ipf::cli::cmd_schedule},
        {"invariants", ipf::cli::cmd_invariants}, {"network", ipf::cli::cmd_network},
        {"diagnose", ipf::cli::cmd_diagnose},   {"reproduce", ipf::cli::cmd_reproduce},
        {"pipeline", ipf::cli::cmd_pipeline}};
    return table.at(name)(cfg, std::cout);
  } catch (const ipf::Error& e) {
    std::string msg = e.what();
    if (msg.rfind(name + ": ", 0) == 0) msg.erase(0, name.size() + 2);
    std::cerr << name << ": error [" << e.kind() << "] " << msg << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << name << ": error " << e.what() << '\n';
    return 2;
  }
}
