#include "ipf/diffusion.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "ipf/parallel.hpp"

namespace ipf {

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

Vector DiffusionModel::control(double t, const Vector& x, const Vector& memo) const {
  if (!control_law) return Vector::Zero(n);
  return control_law(t, x, memo);
}

Matrix DiffusionModel::half_diffusion(double t) const {
  const Matrix sigma = diffusion(t);
  return 0.5 * sigma * sigma.transpose();
}

void DiffusionModel::validate() const {
  if (n < 1) throw InputError("diffusion model: dimension must be >= 1");
  if (!drift && !linear) throw InputError("diffusion model: drift is not set");
  if (!diffusion) throw InputError("diffusion model: diffusion is not set");
  if (!(T > s)) throw InputError("diffusion model: horizon must satisfy T > s");
  if (initial_mean.size() != n) throw InputError("diffusion model: initial_mean has wrong size");
  if (initial_cov.rows() != n || initial_cov.cols() != n) {
    throw InputError("diffusion model: initial_cov has wrong shape");
  }
  if (!initial_cov.allFinite() || (initial_cov - initial_cov.transpose()).cwiseAbs().maxCoeff() >
                                      1e-12 * (1.0 + initial_cov.cwiseAbs().maxCoeff())) {
    throw InputError("diffusion model: initial_cov is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(initial_cov, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + es.eigenvalues().cwiseAbs().maxCoeff())) {
    throw InputError("diffusion model: initial_cov is not positive semidefinite");
  }
  if (!std::is_sorted(switch_times.begin(), switch_times.end())) {
    throw InputError("diffusion model: switch_times must be increasing");
  }
  if (linear) {
    const auto ok = [&](const Matrix& m) { return m.rows() == n && m.cols() == n; };
    if (!ok(linear->A) || !ok(linear->K) || !ok(linear->M)) {
      throw InputError("diffusion model: linear drift matrices have wrong shape");
    }
  }
}

namespace {

DiffusionModel from_linear(LinearDrift lin, const Matrix& sigma, const Vector& initial_mean,
                           const Matrix& initial_cov, double s, double T) {
  DiffusionModel m;
  m.n = static_cast<int>(lin.A.rows());
  m.drift = [A = lin.A](double, const Vector& x, const Vector& u) -> Vector { return A * x + u; };
  m.control_law = [K = lin.K, M = lin.M](double, const Vector& x, const Vector& memo) -> Vector {
    return K * x + M * memo;
  };
  m.diffusion = [sigma](double) { return sigma; };
  m.initial_mean = initial_mean;
  m.initial_cov = initial_cov;
  m.s = s;
  m.T = T;
  m.linear = std::move(lin);
  return m;
}

}  // namespace

DiffusionModel linear_model(const Matrix& drift_operator, const Matrix& sigma,
                            const Matrix& feedback_gain, const Vector& initial_mean,
                            const Matrix& initial_cov, double s, double T) {
  const auto n = drift_operator.rows();
  return from_linear({drift_operator, feedback_gain, Matrix::Zero(n, n)}, sigma, initial_mean,
                     initial_cov, s, T);
}

DiffusionModel step_controlled_model(const Matrix& drift_operator, const Matrix& sigma,
                                     std::vector<double> switch_times,
                                     const Vector& initial_mean, const Matrix& initial_cov,
                                     double s, double T) {
  const auto n = drift_operator.rows();
  auto m = from_linear({drift_operator, Matrix::Zero(n, n), -2.0 * drift_operator}, sigma,
                       initial_mean, initial_cov, s, T);
  m.switch_times = std::move(switch_times);
  return m;
}

DiffusionModel ornstein_uhlenbeck(double theta, double sigma, double x0_mean, double x0_var,
                                  double s, double T) {
  return linear_model(Matrix::Constant(1, 1, -theta), Matrix::Constant(1, 1, sigma),
                      Matrix::Zero(1, 1), Vector::Constant(1, x0_mean),
                      Matrix::Constant(1, 1, x0_var), s, T);
}

std::size_t EnsembleStats::index_at_or_before(double t) const {
  if (grid.empty()) throw InputError("ensemble stats: empty grid");
  const double span = grid.back() - grid.front();
  const double tol = 1e-9 * (span > 0.0 ? span : 1.0);
  if (t < grid.front() - tol || t > grid.back() + tol) {
    std::ostringstream os;
    os << "ensemble stats: time " << t << " outside grid [" << grid.front() << ", "
       << grid.back() << "]";
    throw InputError(os.str());
  }
  const auto it = std::upper_bound(grid.begin(), grid.end(), t + tol);
  return static_cast<std::size_t>(std::distance(grid.begin(), it)) - 1;
}

Matrix EnsembleStats::interpolate(const std::vector<Matrix>& series, double t) const {
  if (series.size() != grid.size()) throw InputError("ensemble stats: series not grid-aligned");
  const std::size_t i = index_at_or_before(t);
  if (i + 1 >= grid.size() || std::abs(grid[i] - t) <= 1e-12 * (1.0 + std::abs(t))) {
    return series[i];
  }
  const double w = (t - grid[i]) / (grid[i + 1] - grid[i]);
  return (1.0 - w) * series[i] + w * series[i + 1];
}

Vector EnsembleStats::interpolate_mean(double t) const {
  const std::size_t i = index_at_or_before(t);
  if (i + 1 >= grid.size()) return mean[i];
  const double w = (t - grid[i]) / (grid[i + 1] - grid[i]);
  return (1.0 - w) * mean[i] + w * mean[i + 1];
}

std::vector<double> make_grid(double s, double T, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("time step must be positive");
  if (!(T > s)) throw InputError("horizon must satisfy T > s");
  const auto steps = std::max<long long>(1, std::llround((T - s) / dt));
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (long long i = 0; i <= steps; ++i) {
    grid[static_cast<std::size_t>(i)] = s + (T - s) * static_cast<double>(i) / static_cast<double>(steps);
  }
  grid.back() = T;
  return grid;
}

std::uint64_t path_stream_seed(std::uint64_t seed, std::int64_t path) {
  // splitmix64 over (seed, path)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(path) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Square root factor L with L Lᵀ = cov for a PSD covariance.
Matrix psd_factor(const Matrix& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  const Vector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal();
}

}  // namespace

void integrate_path(const DiffusionModel& model, const std::vector<double>& grid,
                    const std::vector<Matrix>& sigma_on_grid, std::uint64_t seed,
                    std::int64_t path, const PathVisitor& visit) {
  const int n = model.n;
  std::mt19937_64 rng(path_stream_seed(seed, path));
  std::normal_distribution<double> normal(0.0, 1.0);

  Vector x = model.initial_mean;
  if (model.initial_cov.cwiseAbs().maxCoeff() > 0.0) {
    Vector z(n);
    for (int i = 0; i < n; ++i) z(i) = normal(rng);
    x.noalias() += psd_factor(model.initial_cov) * z;
  }
  Vector memo = x;
  Vector drift(n);
  Vector noise(n);
  Vector dw(n);
  std::size_t next_switch = 0;
  const auto& switches = model.switch_times;
  while (next_switch < switches.size() && switches[next_switch] < grid.front() - 1e-12) ++next_switch;

  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    while (next_switch < switches.size() && switches[next_switch] <= t + 1e-12) {
      memo = x;
      ++next_switch;
    }
    if (model.linear) {
      const auto& lin = *model.linear;
      drift.noalias() = lin.A * x;
      drift.noalias() += lin.K * x;
      drift.noalias() += lin.M * memo;
    } else {
      drift = model.drift(t, x, model.control(t, x, memo));
    }
    if (!x.allFinite() || !drift.allFinite()) {
      std::ostringstream os;
      os << "simulation diverged at t=" << t << " on path " << path;
      throw SimulationDivergedError(t, os.str());
    }
    visit(k, t, x, drift);
    if (k + 1 == grid.size()) break;
    const double h = grid[k + 1] - t;
    const double sq = std::sqrt(h);
    for (int i = 0; i < n; ++i) dw(i) = sq * normal(rng);
    noise.noalias() = sigma_on_grid[k] * dw;
    x += h * drift + noise;
  }
}

namespace {

struct MomentBlock {
  std::vector<Vector> sum_x;
  std::vector<Matrix> sum_xx;
  std::vector<Matrix> sum_xx2;

  MomentBlock(std::size_t len, int n)
      : sum_x(len, Vector::Zero(n)), sum_xx(len, Matrix::Zero(n, n)), sum_xx2(len, Matrix::Zero(n, n)) {}

  void merge(const MomentBlock& o) {
    for (std::size_t k = 0; k < sum_x.size(); ++k) {
      sum_x[k] += o.sum_x[k];
      sum_xx[k] += o.sum_xx[k];
      sum_xx2[k] += o.sum_xx2[k];
    }
  }
};

constexpr std::int64_t kBlockSize = 1024;

}  // namespace

EnsembleStats simulate_ensemble(const DiffusionModel& model, const SimulationOptions& opts) {
  model.validate();
  if (opts.n_paths < 2) throw InputError("simulate_ensemble: n_paths must be >= 2");
  const double dt = opts.dt > 0.0 ? opts.dt : 1e-3 * (model.T - model.s);
  if (opts.dt < 0.0 || !std::isfinite(opts.dt)) throw InputError("simulate_ensemble: dt must be > 0");

  EnsembleStats stats;
  stats.grid = make_grid(model.s, model.T, dt);
  stats.n_paths = opts.n_paths;
  stats.seed = opts.seed;
  const std::size_t len = stats.grid.size();
  const int n = model.n;

  std::vector<Matrix> sigma_on_grid(len);
  stats.b.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    sigma_on_grid[k] = model.diffusion(stats.grid[k]);
    if (sigma_on_grid[k].rows() != n || !sigma_on_grid[k].allFinite()) {
      throw InputError("simulate_ensemble: diffusion not evaluable on the horizon");
    }
    stats.b[k] = 0.5 * sigma_on_grid[k] * sigma_on_grid[k].transpose();
  }

  const std::int64_t n_blocks = (opts.n_paths + kBlockSize - 1) / kBlockSize;
  std::vector<MomentBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(n_blocks));
  for (std::int64_t i = 0; i < n_blocks; ++i) blocks.emplace_back(len, n);

  const std::size_t keep = std::min<std::size_t>(opts.keep_paths, static_cast<std::size_t>(opts.n_paths));
  stats.paths.assign(keep, std::vector<Vector>(len));

  parallel_for(n_blocks, opts.workers, [&](std::int64_t b) {
    MomentBlock& blk = blocks[static_cast<std::size_t>(b)];
    const std::int64_t first = b * kBlockSize;
    const std::int64_t last = std::min(opts.n_paths, first + kBlockSize);
    Matrix outer(n, n);
    for (std::int64_t p = first; p < last; ++p) {
      const bool retain = static_cast<std::size_t>(p) < keep;
      integrate_path(model, stats.grid, sigma_on_grid, opts.seed, p,
                     [&](std::size_t k, double, const Vector& x, const Vector&) {
                       blk.sum_x[k] += x;
                       outer.noalias() = x * x.transpose();
                       blk.sum_xx[k] += outer;
                       blk.sum_xx2[k] += outer.cwiseProduct(outer);
                       if (retain) stats.paths[static_cast<std::size_t>(p)][k] = x;
                     });
    }
  });

  // pairwise tree over blocks in index order
  for (std::size_t stride = 1; stride < blocks.size(); stride *= 2) {
    for (std::size_t i = 0; i + stride < blocks.size(); i += 2 * stride) blocks[i].merge(blocks[i + stride]);
  }
  const MomentBlock& total = blocks.front();

  const double np = static_cast<double>(opts.n_paths);
  stats.mean.resize(len);
  stats.r.resize(len);
  stats.r_stderr.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    stats.mean[k] = total.sum_x[k] / np;
    const Matrix r = total.sum_xx[k] / np;
    stats.r[k] = symmetrized(r);
    const Matrix second = total.sum_xx2[k] / np;
    const Matrix var = (second - r.cwiseProduct(r)).cwiseMax(0.0) * (np / (np - 1.0));
    stats.r_stderr[k] = symmetrized((var / np).cwiseSqrt());
  }
  return stats;
}

namespace {

// Derivative at x[i0] of the quadratic through (x[j], y[j]) for j in {a, b, c}.
Matrix lagrange_derivative(const std::vector<double>& x, const std::vector<Matrix>& y,
                           std::size_t a, std::size_t b, std::size_t c, std::size_t at) {
  const double xa = x[a], xb = x[b], xc = x[c], t = x[at];
  const double la = ((t - xb) + (t - xc)) / ((xa - xb) * (xa - xc));
  const double lb = ((t - xa) + (t - xc)) / ((xb - xa) * (xb - xc));
  const double lc = ((t - xa) + (t - xb)) / ((xc - xa) * (xc - xb));
  return la * y[a] + lb * y[b] + lc * y[c];
}

}  // namespace

EnsembleStats covariance_derivative(EnsembleStats stats) {
  const std::size_t len = stats.grid.size();
  if (len < 3 || stats.r.size() != len) {
    throw InputError("covariance_derivative: grid needs at least 3 points aligned with r");
  }
  for (std::size_t k = 1; k < len; ++k) {
    if (!(stats.grid[k] > stats.grid[k - 1])) throw InputError("covariance_derivative: grid not increasing");
  }
  stats.r_dot.resize(len);
  stats.r_dot[0] = symmetrized(lagrange_derivative(stats.grid, stats.r, 0, 1, 2, 0));
  for (std::size_t k = 1; k + 1 < len; ++k) {
    stats.r_dot[k] = symmetrized(lagrange_derivative(stats.grid, stats.r, k - 1, k, k + 1, k));
  }
  stats.r_dot[len - 1] = symmetrized(lagrange_derivative(stats.grid, stats.r, len - 3, len - 2, len - 1, len - 1));
  return stats;
}

Matrix left_derivative(const EnsembleStats& stats, double t) {
  if (stats.grid.size() < 3) throw InputError("left_derivative: grid needs at least 3 points");
  std::size_t i = stats.index_at_or_before(t);
  if (i < 2) {
    // not enough history on the left: forward formula at the start
    return symmetrized(lagrange_derivative(stats.grid, stats.r, 0, 1, 2, i));
  }
  return symmetrized(lagrange_derivative(stats.grid, stats.r, i - 2, i - 1, i, i));
}

}  // namespace ipf
