#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ipf/core.hpp"

namespace ipf {

// Distance from λt = ln 2 below which the renovation is treated as singular.
inline constexpr double kRenovationPoleTol = 1e-12;

/// Eigenvalue renovated by the step control over a segment of duration t:
/// λ' = −λ e^{λt} (2 − e^{λt})⁻¹. Throws SingularRenovationError at λt = ln 2,
/// where the segment's state reaches zero.
template <typename Scalar>
Scalar eigen_step(Scalar lambda, Scalar t) {
  using std::abs;
  using std::exp;
  const Scalar lt = lambda * t;
  if (abs(lt - Scalar(kLn2)) <= Scalar(kRenovationPoleTol)) {
    throw SingularRenovationError("eigen_step: lambda*t = ln 2, the renovated state vanishes");
  }
  const Scalar e = exp(lt);
  return -lambda * e / (Scalar(2) - e);
}

/// State at the end of a segment: z' = (2 − e^{λt}) z.
template <typename Scalar>
Scalar state_step(Scalar z, Scalar lambda, Scalar t) {
  using std::exp;
  return (Scalar(2) - exp(lambda * t)) * z;
}

/// Moment at which the last segment drives the state to zero:
/// T = t_prev + ln 2 / |λ|, defined for λ > 0 only.
template <typename Scalar>
Scalar terminal_time(Scalar t_prev, Scalar lambda) {
  using std::abs;
  if (!(lambda > Scalar(0))) {
    throw NeedsNeedleControlError(
        "terminal_time: the preceding eigenvalue must be positive; apply a needle control first");
  }
  return t_prev + Scalar(kLn2) / abs(lambda);
}

/// Equalization chain of a ranged real spectrum. Stage k (k = 1..n−1) lasts
/// `intervals[k−1]`; at its end the running group (modes 1..k) and mode k+1
/// have equal |λ|. `lambdas[k]` holds the signed eigenvalues of every mode
/// after stage k (row 0 is the starting spectrum with the stable sign).
struct EigenChain {
  int n = 0;
  std::vector<Vector> lambdas;
  std::vector<double> intervals;
  /// Duration of the final segment that zeroes the state (0 when n <= 1).
  double terminal = 0.0;

  std::vector<double> switch_moments() const;  // cumulative τ_k
  double horizon() const;                      // τ_{n−1} + terminal
};

/// Optional replacement for the eigenvalue that starts a stage, e.g. a value
/// identified from data: (stage index k >= 1, mode, chain value) → value used.
using RenovationHook = std::function<double(int stage, int mode, double chain_value)>;

/// Builds the chain from magnitudes |α_1| > |α_2| > … > |α_n|. Each stage
/// renovates every mode by eigen_step from its stable-signed value −|λ| (the
/// needle control at the preceding DP flips the sign), and the stage length
/// is the root of |λ_group(t)| = |λ_{k+1}(t)|, bracketed geometrically from
/// t = ε up to 10³/|λ_min| and refined by bisection.
EigenChain build_equalization_chain(const Vector& spectrum, int n,
                                    const RenovationHook& hook = nullptr);

/// Applies state_step along the chain, ending with the terminal segment.
/// Returns the state of every mode at each switch moment and at the horizon.
std::vector<Vector> propagate_states(const EigenChain& chain, const Vector& z0);

/// Relative mismatch of |λ| among the equalized modes after every stage.
double chain_equalization_residual(const EigenChain& chain);

/// Interval ratios of a chain: t_{k+1}/t_k and τ_{k+1}/τ_k.
struct ChainRatios {
  std::vector<double> interval;
  std::vector<double> cumulative;
};
ChainRatios chain_ratios(const EigenChain& chain);

}  // namespace ipf
