#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ipf/core.hpp"

namespace ipf {

/// Drift a(t, x, u).
using DriftFn = std::function<Vector(double t, const Vector& x, const Vector& u)>;
/// Diffusion σ(t); 2b = σσᵀ.
using DiffusionFn = std::function<Matrix(double t)>;
/// Control law u(t, x, x_memo), where x_memo is the path state memorized at the
/// most recent switch moment (the initial state before the first switch).
using ControlFn = std::function<Vector(double t, const Vector& x, const Vector& x_memo)>;

/// Optional closed form of a linear drift a = A x + K x + M x_memo. When set,
/// the integrator uses it in place of `drift`/`control_law` (both are still
/// populated consistently by the builders below).
struct LinearDrift {
  Matrix A;
  Matrix K;
  Matrix M;
};

/// Microlevel controlled Itô diffusion dx = a(t, x, u) dt + σ(t) dξ on [s, T].
struct DiffusionModel {
  int n = 1;
  DriftFn drift;
  DiffusionFn diffusion;
  ControlFn control_law;             // empty means u ≡ 0
  std::vector<double> switch_times;  // moments where the control memorizes x
  Vector initial_mean;
  Matrix initial_cov;
  double s = 0.0;
  double T = 1.0;
  std::optional<LinearDrift> linear;

  Vector control(double t, const Vector& x, const Vector& memo) const;
  /// b(t) = ½ σ(t)σ(t)ᵀ
  Matrix half_diffusion(double t) const;
  /// Throws InputError on malformed fields or a non-PSD initial covariance.
  void validate() const;
};

/// Linear model a = A x + u with constant σ and u = K x (K may be zero).
DiffusionModel linear_model(const Matrix& drift_operator, const Matrix& sigma,
                            const Matrix& feedback_gain, const Vector& initial_mean,
                            const Matrix& initial_cov, double s, double T);

/// Macromodel ẋ = A(x + v) with the step control v = −2x(τ_k) held between the
/// given switch moments (u = A v).
DiffusionModel step_controlled_model(const Matrix& drift_operator, const Matrix& sigma,
                                     std::vector<double> switch_times,
                                     const Vector& initial_mean, const Matrix& initial_cov,
                                     double s, double T);

/// Scalar Ornstein–Uhlenbeck dx = −θx dt + σ dξ.
DiffusionModel ornstein_uhlenbeck(double theta, double sigma, double x0_mean, double x0_var,
                                  double s, double T);

/// Per-time moments of the ensemble. `r` is the raw second moment E[xxᵀ];
/// `b` is ½σσᵀ of the model on the same grid.
struct EnsembleStats {
  std::vector<double> grid;
  std::vector<Vector> mean;
  std::vector<Matrix> r;
  std::vector<Matrix> r_stderr;  // standard error of each entry of r
  std::vector<Matrix> r_dot;     // empty until covariance_derivative runs
  std::vector<Matrix> b;
  std::vector<std::vector<Vector>> paths;  // optional, path-major
  std::int64_t n_paths = 0;
  std::uint64_t seed = 0;

  int dim() const { return r.empty() ? 0 : static_cast<int>(r.front().rows()); }
  std::size_t size() const { return grid.size(); }

  /// Largest grid index with grid[i] <= t (+ a small tolerance).
  std::size_t index_at_or_before(double t) const;
  /// Linear interpolation of a per-time matrix series at t.
  Matrix interpolate(const std::vector<Matrix>& series, double t) const;
  Vector interpolate_mean(double t) const;
};

struct SimulationOptions {
  std::int64_t n_paths = 1000;
  double dt = 0.0;  // 0 selects 10⁻³ of the horizon
  std::uint64_t seed = 0;
  int workers = 0;  // 0 selects hardware concurrency
  std::size_t keep_paths = 0;  // number of sample trajectories to retain
};

/// Euler–Maruyama ensemble. Paths are grouped into fixed blocks whose moment
/// sums are combined by a pairwise tree, so the result depends only on
/// (seed, n_paths, dt).
EnsembleStats simulate_ensemble(const DiffusionModel& model, const SimulationOptions& opts);

/// Three-point Lagrange derivative of r on the (possibly non-uniform) grid.
EnsembleStats covariance_derivative(EnsembleStats stats);

/// Backward three-point derivative of r at the last grid point <= t.
Matrix left_derivative(const EnsembleStats& stats, double t);

// -- engine shared with the entropy module ---------------------------------

/// Time grid used by the integrator for the given horizon and step.
std::vector<double> make_grid(double s, double T, double dt);

/// Callback per path and grid point: (grid index, t, x, drift at (t, x)).
using PathVisitor =
    std::function<void(std::size_t k, double t, const Vector& x, const Vector& drift)>;

/// Integrates a single path with its own RNG stream; calls `visit` at every grid point.
void integrate_path(const DiffusionModel& model, const std::vector<double>& grid,
                    const std::vector<Matrix>& sigma_on_grid, std::uint64_t seed,
                    std::int64_t path, const PathVisitor& visit);

/// Seed for the RNG stream of one path.
std::uint64_t path_stream_seed(std::uint64_t seed, std::int64_t path);

}  // namespace ipf
