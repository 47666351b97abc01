#include "ipf/entropy.hpp"

#include <numeric>

#include "ipf/parallel.hpp"

namespace ipf {

std::string to_string(EntropyMethod m) {
  return m == EntropyMethod::MonteCarlo ? "monte-carlo" : "covariance-form";
}

namespace {

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

EntropyEstimate entropy_mc(const DiffusionModel& model, const SimulationOptions& opts) {
  model.validate();
  if (opts.n_paths < 2) throw InputError("entropy_mc: n_paths must be >= 2");
  const double dt = opts.dt > 0.0 ? opts.dt : 1e-3 * (model.T - model.s);
  const auto grid = make_grid(model.s, model.T, dt);
  const std::size_t len = grid.size();

  std::vector<Matrix> sigma_on_grid(len);
  std::vector<Matrix> inv_2b(len);
  for (std::size_t k = 0; k < len; ++k) {
    sigma_on_grid[k] = model.diffusion(grid[k]);
    inv_2b[k] = guarded_inverse<SingularDiffusionError>(
        sigma_on_grid[k] * sigma_on_grid[k].transpose(),
        "entropy_mc: 2b at t=" + std::to_string(grid[k]));
  }

  std::vector<double> per_path(static_cast<std::size_t>(opts.n_paths));
  constexpr std::int64_t kBlock = 1024;
  const std::int64_t n_blocks = (opts.n_paths + kBlock - 1) / kBlock;
  parallel_for(n_blocks, opts.workers, [&](std::int64_t b) {
    const std::int64_t first = b * kBlock;
    const std::int64_t last = std::min(opts.n_paths, first + kBlock);
    for (std::int64_t p = first; p < last; ++p) {
      double integral = 0.0;
      double prev_q = 0.0;
      double prev_t = 0.0;
      integrate_path(model, grid, sigma_on_grid, opts.seed, p,
                     [&](std::size_t k, double t, const Vector&, const Vector& a) {
                       const double q = a.dot(inv_2b[k] * a);
                       if (k > 0) integral += 0.5 * (q + prev_q) * (t - prev_t);
                       prev_q = q;
                       prev_t = t;
                     });
      per_path[static_cast<std::size_t>(p)] = 0.5 * integral;
    }
  });

  const double np = static_cast<double>(opts.n_paths);
  const double mean = pairwise_sum(per_path, 0, per_path.size()) / np;
  std::vector<double> sq(per_path.size());
  for (std::size_t i = 0; i < per_path.size(); ++i) sq[i] = (per_path[i] - mean) * (per_path[i] - mean);
  const double var = pairwise_sum(sq, 0, sq.size()) / (np - 1.0);

  EntropyEstimate est;
  est.value = mean;
  est.method = EntropyMethod::MonteCarlo;
  est.std_error = std::sqrt(var / np);
  est.s = model.s;
  est.T = model.T;
  return est;
}

namespace {

template <typename InvFn>
EntropyEstimate covariance_quadrature(const OperatorTrace& u, const EnsembleStats& stats, InvFn&& inv_2b_at) {
  const std::size_t len = stats.grid.size();
  if (len < 2 || stats.r.size() != len) throw InputError("entropy_covariance_form: stats need a grid and r");
  double integral = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const Matrix U = u(stats.grid[k]);
    const Matrix inv = inv_2b_at(k);
    if (U.rows() != inv.rows() || U.cols() != stats.r[k].rows()) {
      throw InputError("entropy_covariance_form: operator shape mismatch");
    }
    const double q = (U.transpose() * inv * U * stats.r[k]).trace();
    if (k > 0) integral += 0.5 * (q + prev) * (stats.grid[k] - stats.grid[k - 1]);
    prev = q;
  }
  EntropyEstimate est;
  est.value = 0.5 * integral;
  est.method = EntropyMethod::CovarianceForm;
  est.s = stats.grid.front();
  est.T = stats.grid.back();
  return est;
}

Matrix inverse_of_2b(const Matrix& two_b, double t) {
  return guarded_inverse<DegenerateFunctionalError>(
      two_b, "entropy_covariance_form: degenerate diffusion at t=" + std::to_string(t));
}

}  // namespace

EntropyEstimate entropy_covariance_form(const OperatorTrace& u, const DiffusionFn& sigma,
                                        const EnsembleStats& stats) {
  return covariance_quadrature(u, stats, [&](std::size_t k) {
    const Matrix s = sigma(stats.grid[k]);
    return inverse_of_2b(s * s.transpose(), stats.grid[k]);
  });
}

EntropyEstimate entropy_covariance_form(const OperatorTrace& u, const EnsembleStats& stats) {
  if (stats.b.size() != stats.grid.size()) throw InputError("entropy_covariance_form: stats carry no b");
  return covariance_quadrature(u, stats, [&](std::size_t k) {
    return inverse_of_2b(2.0 * stats.b[k], stats.grid[k]);
  });
}

EntropyEstimate entropy_covariance_form_companion(const OperatorTrace& u, const EnsembleStats& stats,
                                                  const EnsembleStats& companion) {
  if (companion.r_dot.size() != companion.grid.size() || companion.grid != stats.grid) {
    throw InputError("entropy_covariance_form_companion: companion must share the grid and carry r_dot");
  }
  return covariance_quadrature(u, stats, [&](std::size_t k) {
    return inverse_of_2b(companion.r_dot[k], stats.grid[k]);
  });
}

}  // namespace ipf
