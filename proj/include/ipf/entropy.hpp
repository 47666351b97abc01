#pragma once

#include <optional>
#include <string>

#include "ipf/diffusion.hpp"

namespace ipf {

enum class EntropyMethod { MonteCarlo, CovarianceForm };

std::string to_string(EntropyMethod m);

/// Entropy functional of a controlled diffusion relative to its zero-drift
/// companion, in nats.
struct EntropyEstimate {
  double value = 0.0;
  EntropyMethod method = EntropyMethod::MonteCarlo;
  std::optional<double> std_error;  // Monte Carlo only
  double s = 0.0;
  double T = 0.0;
};

/// Nonrandom operator U(t) of a drift of the form aᵘ = U(t) x.
using OperatorTrace = std::function<Matrix(double t)>;

/// ½ E ∫ aᵘᵀ (2b)⁻¹ aᵘ dt over simulated paths (trapezoid in t). The
/// zero-mean stochastic-integral part of the functional is not simulated.
EntropyEstimate entropy_mc(const DiffusionModel& model, const SimulationOptions& opts);

/// ½ ∫ tr(Uᵀ (σσᵀ)⁻¹ U r) dt on the stats grid; the scalar case is
/// ½ ∫ u² σ⁻² r dt. σ is supplied explicitly and is authoritative.
EntropyEstimate entropy_covariance_form(const OperatorTrace& u, const DiffusionFn& sigma,
                                        const EnsembleStats& stats);

/// Same, with 2b taken from `stats.b`.
EntropyEstimate entropy_covariance_form(const OperatorTrace& u, const EnsembleStats& stats);

/// Cross-check variant whose denominator is ṙ of the zero-drift companion
/// ensemble (which equals σσᵀ up to sampling error).
EntropyEstimate entropy_covariance_form_companion(const OperatorTrace& u, const EnsembleStats& stats,
                                                  const EnsembleStats& companion);

}  // namespace ipf
