#pragma once

#include <map>
#include <string>

#include "ipf/diffusion.hpp"

namespace ipf {

enum class IdentificationMethod { ReducedControl, CovarianceRatio, DispersionWindow, ClosedLoop };

std::string to_string(IdentificationMethod m);

/// Macromodel operator identified at a moment τ.
struct IdentifiedOperator {
  double tau = 0.0;
  Matrix A;
  IdentificationMethod method = IdentificationMethod::CovarianceRatio;
  Eigen::VectorXcd eigenvalues;
  std::map<std::string, double> diagnostics;
  std::map<std::string, std::string> notes;
};

/// Reduced control v = G x + c(t) used by identify_reduced (G = −2I gives v = −2x).
struct ReducedControl {
  Matrix gain;                                  // empty means zero
  std::function<Vector(double t)> offset;       // empty means zero

  static ReducedControl feedback(int n, double k) { return {k * Matrix::Identity(n, n), nullptr}; }
  static ReducedControl none() { return {}; }
};

/// A(τ) = −b(τ) r_v(τ)⁻¹ with r_v = E[(x+v)(x+v)ᵀ].
IdentifiedOperator identify_reduced(const EnsembleStats& stats, const ReducedControl& v, double tau);

/// Where ṙ_− comes from in the covariance-ratio relation.
enum class RateSource {
  Ensemble,     // backward difference of the ensemble r at τ
  DpDiffusion,  // ṙ(τ_k) = 2b(τ_k), the identity that holds at a DP
};

/// A_− = ½ ṙ_− r(τ)⁻¹, with both factors read at the last grid point <= τ. The commutator ‖½ṙr⁻¹ − ½r⁻¹ṙ‖ is recorded as a diagnostic.
IdentifiedOperator identify_covariance_ratio(const EnsembleStats& stats, double tau,
                                             RateSource source = RateSource::Ensemble);

// Windows shorter than this are rejected by identify_dispersion_window.
inline constexpr double kMinWindow = 1e-9;

/// A(τ) = b(τ) (2 ∫_{τ−w}^{τ} b dt)⁻¹.
IdentifiedOperator identify_dispersion_window(const EnsembleStats& stats, double tau, double window);

/// Closed-loop operator Aᵛ(τ) = b(τ) r(τ)⁻¹.
IdentifiedOperator identify_closed_loop(const EnsembleStats& stats, double tau);

/// ∫_{τ−w}^{τ} b dt by the trapezoid rule on the stats grid.
Matrix integrate_b(const EnsembleStats& stats, double tau, double window);

/// Width w of the DP vicinity at which the constraint binds:
/// tr(2∫_{τ−w}^{τ} b dt) = tr r(τ). Throws NoRootError when none exists inside the grid.
double constraint_window(const EnsembleStats& stats, double tau);

struct ConstraintCheck {
  double residual = 0.0;   // ‖E[2XXᵀ] + grad X‖_F
  double grad_norm = 0.0;  // ‖grad X‖_F
  double relative() const { return grad_norm > 0.0 ? residual / grad_norm : residual; }
};

/// Microlevel constraint E[2XXᵀ + ∂X/∂x] = 0 for given moments.
ConstraintCheck check_constraint(const Matrix& expected_xxt, const Matrix& grad);

/// Constraint at τ with X = −½ r⁻¹ x and grad X = −½ (∫_{τ−w}^{τ} σσᵀ dt)⁻¹.
ConstraintCheck check_constraint(const EnsembleStats& stats, double tau, double window);

/// Eigenvalues of A(τ_{k−1}) renovated over Δt by eigen_step, i.e. the
/// per-eigenvalue form of the operator propagation between DPs.
Eigen::VectorXcd propagate_eigenvalues(const Matrix& A_prev, double dt);

}  // namespace ipf
