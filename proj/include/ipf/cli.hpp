#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ipf/io.hpp"

namespace ipf::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "IPF_OUTPUT_DIR";

/// Model description shared by simulate / entropy / identify / pipeline.
///  - "ou":       dx = −θx dt + σ dξ
///  - "linear":   dx = (A + K)x dt + σ dξ
///  - "spectrum": A = −diag(ranged spectrum of n modes from alpha1), σ = sigma·I,
///                started from its stationary law
struct ModelSpec {
  std::string type = "ou";
  double theta = 1.0;
  double sigma = 1.0;
  double x0_mean = 0.0;
  double x0_var = 0.0;
  Matrix A;
  Matrix sigma_matrix;
  Matrix K;
  Vector mean;
  Matrix cov;
  int n = 3;
  double alpha1 = 1.0;
  double s = 0.0;
  double T = 5.0;
};

struct RunConfig {
  ModelSpec model;
  std::int64_t n_paths = 10000;
  double dt = 0.0;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  std::size_t keep_paths = 0;

  std::optional<double> tau;       // identification moment (default: model horizon)
  std::string method = "all";      // identification method or "all"
  double window = 0.0;             // dispersion window (0: constraint window)

  double gamma = 0.5;
  int n = 3;
  double alpha1 = 1.0;
  std::vector<double> spectrum;    // explicit schedule spectrum (else ranged from n, alpha1)
  std::vector<double> z0;          // schedule starting state (default ones)

  std::string schedule_path;       // diagnose input
  std::string stats_path;          // diagnose input (optional)

  std::string output_dir;          // empty: $IPF_OUTPUT_DIR, else "."
  std::string format = "json";     // json | csv
};

/// Reads a config document. Unknown keys are rejected.
RunConfig config_from_json(const io::json& doc);
RunConfig load_config(const std::string& path);

/// Throws InputError for parameters a command cannot run with.
void validate(const std::string& command, const RunConfig& cfg);

std::string resolve_output_dir(const RunConfig& cfg);
DiffusionModel build_model(const ModelSpec& spec);

struct ReproRow {
  std::string name;
  double paper = 0.0;
  double computed = 0.0;
  double gap = 0.0;        // absolute or relative, per `relative`
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;
  std::string note;
};

/// Every quoted constant recomputed and compared against its pinned tolerance.
std::vector<ReproRow> reproduction_table();
std::string format_table(const std::vector<ReproRow>& rows);
io::json table_json(const std::vector<ReproRow>& rows);

// Commands print their main result to `out` and return the process exit code.
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_entropy(const RunConfig& cfg, std::ostream& out);
int cmd_identify(const RunConfig& cfg, std::ostream& out);
int cmd_schedule(const RunConfig& cfg, std::ostream& out);
int cmd_invariants(const RunConfig& cfg, std::ostream& out);
int cmd_network(const RunConfig& cfg, std::ostream& out);
int cmd_diagnose(const RunConfig& cfg, std::ostream& out);
int cmd_reproduce(const RunConfig& cfg, std::ostream& out);
int cmd_pipeline(const RunConfig& cfg, std::ostream& out);

/// Artifacts written by the pipeline, in manifest order.
inline const std::vector<std::string> kPipelineArtifacts = {
    "ensemble_stats.json", "identified_operators.json", "schedule.json", "network.json",
    "diagnostics.json"};

}  // namespace ipf::cli
