#include "ipf/identification.hpp"

#include <complex>

#include "ipf/eigenchain.hpp"
#include "ipf/roots.hpp"

namespace ipf {

std::string to_string(IdentificationMethod m) {
  switch (m) {
    case IdentificationMethod::ReducedControl: return "reduced-control";
    case IdentificationMethod::CovarianceRatio: return "covariance-ratio";
    case IdentificationMethod::DispersionWindow: return "dispersion-window";
    case IdentificationMethod::ClosedLoop: return "closed-loop";
  }
  return "unknown";
}

namespace {

IdentifiedOperator make_result(double tau, Matrix A, IdentificationMethod method) {
  IdentifiedOperator op;
  op.tau = tau;
  op.eigenvalues = Eigen::EigenSolver<Matrix>(A, false).eigenvalues();
  op.A = std::move(A);
  op.method = method;
  return op;
}

Matrix b_at(const EnsembleStats& stats, double tau) {
  if (stats.b.size() != stats.grid.size()) throw InputError("identification: stats carry no b");
  return stats.interpolate(stats.b, tau);
}

}  // namespace

IdentifiedOperator identify_reduced(const EnsembleStats& stats, const ReducedControl& v, double tau) {
  const int n = stats.dim();
  const Matrix r = stats.interpolate(stats.r, tau);
  const Vector m = stats.interpolate_mean(tau);
  const Matrix G = Matrix::Identity(n, n) + (v.gain.size() ? v.gain : Matrix::Zero(n, n));
  const Vector c = v.offset ? v.offset(tau) : Vector::Zero(n);
  const Matrix r_v = symmetrized(G * r * G.transpose() + G * m * c.transpose() +
                                 c * m.transpose() * G.transpose() + c * c.transpose());
  const Matrix b = b_at(stats, tau);
  auto op = make_result(tau, -b * guarded_inverse(r_v, "identify_reduced: r_v"),
                        IdentificationMethod::ReducedControl);
  op.diagnostics["cond_r_v"] = condition_number(r_v);
  return op;
}

IdentifiedOperator identify_covariance_ratio(const EnsembleStats& stats, double tau, RateSource source) {
  // ṙ_− is a backward difference ending at the last grid point <= τ; r is read there too
  const std::size_t at = stats.index_at_or_before(tau);
  const Matrix& r = stats.r[at];
  const Matrix r_dot = source == RateSource::Ensemble ? left_derivative(stats, tau) : Matrix(2.0 * b_at(stats, tau));
  const Matrix r_inv = guarded_inverse(r, "identify_covariance_ratio: r");
  auto op = make_result(tau, 0.5 * r_dot * r_inv, IdentificationMethod::CovarianceRatio);
  op.diagnostics["commutator"] = (0.5 * r_dot * r_inv - 0.5 * r_inv * r_dot).norm();
  op.diagnostics["cond_r"] = condition_number(r);
  op.diagnostics["grid_time"] = stats.grid[at];
  op.notes["rate_source"] = source == RateSource::Ensemble ? "ensemble-backward-difference" : "dp-identity-2b";
  return op;
}

Matrix integrate_b(const EnsembleStats& stats, double tau, double window) {
  const double from = tau - window;
  if (stats.b.size() != stats.grid.size()) throw InputError("integrate_b: stats carry no b");
  if (from < stats.grid.front() - 1e-12 || tau > stats.grid.back() + 1e-12) {
    throw InputError("integrate_b: window [tau - w, tau] leaves the grid");
  }
  // trapezoid over the grid points strictly inside plus interpolated ends
  std::vector<std::pair<double, Matrix>> pts;
  pts.emplace_back(from, stats.interpolate(stats.b, from));
  for (std::size_t k = 0; k < stats.grid.size(); ++k) {
    if (stats.grid[k] > from && stats.grid[k] < tau) pts.emplace_back(stats.grid[k], stats.b[k]);
  }
  pts.emplace_back(tau, stats.interpolate(stats.b, tau));
  Matrix acc = Matrix::Zero(stats.dim(), stats.dim());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    acc += 0.5 * (pts[i].second + pts[i - 1].second) * (pts[i].first - pts[i - 1].first);
  }
  return acc;
}

IdentifiedOperator identify_dispersion_window(const EnsembleStats& stats, double tau, double window) {
  if (!(window >= kMinWindow)) throw InputError("identify_dispersion_window: window below minimum");
  const Matrix integral = integrate_b(stats, tau, window);
  const Matrix inv = guarded_inverse<InputError>(2.0 * integral, "identify_dispersion_window: 2∫b dt");
  auto op = make_result(tau, b_at(stats, tau) * inv, IdentificationMethod::DispersionWindow);
  op.diagnostics["window"] = window;
  op.diagnostics["min_sym_eigenvalue"] =
      Eigen::SelfAdjointEigenSolver<Matrix>(symmetrized(op.A), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  return op;
}

IdentifiedOperator identify_closed_loop(const EnsembleStats& stats, double tau) {
  const Matrix r = stats.interpolate(stats.r, tau);
  auto op = make_result(tau, b_at(stats, tau) * guarded_inverse(r, "identify_closed_loop: r"),
                        IdentificationMethod::ClosedLoop);
  op.diagnostics["cond_r"] = condition_number(r);
  return op;
}

double constraint_window(const EnsembleStats& stats, double tau) {
  const double target = stats.interpolate(stats.r, tau).trace();
  const double max_w = tau - stats.grid.front();
  if (!(max_w > kMinWindow)) throw NoRootError("constraint_window: no history before tau");
  auto f = [&](double w) { return (2.0 * integrate_b(stats, tau, w)).trace() - target; };
  const auto w = roots::bisect(f, kMinWindow, max_w, 1e-13, 1e-12);
  if (!w) throw NoRootError("constraint_window: dispersion never accumulates r(tau) inside the grid");
  return *w;
}

ConstraintCheck check_constraint(const Matrix& expected_xxt, const Matrix& grad) {
  return {(2.0 * expected_xxt + grad).norm(), grad.norm()};
}

ConstraintCheck check_constraint(const EnsembleStats& stats, double tau, double window) {
  const Matrix r = stats.interpolate(stats.r, tau);
  const Matrix r_inv = guarded_inverse(r, "check_constraint: r");
  const Matrix exx = 0.25 * r_inv * r * r_inv.transpose();
  const Matrix dispersion = 2.0 * integrate_b(stats, tau, window);
  const Matrix grad = -0.5 * guarded_inverse<InputError>(dispersion, "check_constraint: ∫σσᵀ dt");
  return check_constraint(exx, grad);
}

Eigen::VectorXcd propagate_eigenvalues(const Matrix& A_prev, double dt) {
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Matrix>(A_prev, false).eigenvalues();
  Eigen::VectorXcd out(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    // complex renovation uses the same closed form; only the real pole is guarded
    const std::complex<double> lt = ev(i) * dt;
    if (std::abs(lt - std::complex<double>(kLn2, 0.0)) <= kRenovationPoleTol) {
      throw SingularRenovationError("propagate_eigenvalues: lambda*dt = ln 2");
    }
    const std::complex<double> e = std::exp(lt);
    out(i) = -ev(i) * e / (2.0 - e);
  }
  return out;
}

}  // namespace ipf
