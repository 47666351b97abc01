#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ipf/diffusion.hpp"
#include "ipf/eigenchain.hpp"

namespace ipf {

/// Starting step-wise control at τ_o.
struct StartingControl {
  Vector v;        // reduced form −2 E[x̃]
  Vector u;        // external form b r⁻¹ v
  Vector x_start;  // nonrandom starting state |r^{1/2}|, per coordinate √r_ii
  Matrix A;        // starting operator b r⁻¹
};

StartingControl starting_control(const EnsembleStats& stats, double at);

/// v = −2 x(τ), held over the following segment.
template <typename Derived>
auto step_control(const Eigen::MatrixBase<Derived>& x_at_dp) {
  return (-2 * x_at_dp).eval();
}

struct NeedleEvent {
  double tau = 0.0;
  Vector v_minus;
  Vector v_plus;
  Vector delta_v;
};

/// v_− = −2x(τ−o), v_+ = −2x(τ), δv = v_+ − v_−.
NeedleEvent needle_control(const Vector& x_minus, const Vector& x_plus, double tau = 0.0);

/// Closed-form state on a scalar segment under v = −2x(τ): x(τ)(2 − e^{λ(t−τ)}).
template <typename Scalar>
Scalar segment_state(Scalar x_tau, Scalar lambda, Scalar elapsed) {
  using std::exp;
  return x_tau * (Scalar(2) - exp(lambda * elapsed));
}

/// One mode's macrotrajectory: value and time derivative.
struct ModeTrace {
  std::function<double(double)> x;
  std::function<double(double)> x_dot;
};

struct DpMoment {
  double tau = 0.0;
  int i = 0;
  int j = 0;
};

struct DpDetection {
  std::vector<DpMoment> moments;
  std::vector<std::string> warnings;
};

/// Moments where |ẋ_i/x_i| = |ẋ_j/x_j|, bracketed on `grid` and refined by
/// bisection to `tolerance` relative. Brackets where a mode vanishes are skipped
/// with a warning; identically equal speeds report the grid start.
DpDetection detect_dp(const std::vector<ModeTrace>& modes, const std::vector<double>& grid,
                      double tolerance = 1e-10);

/// Rotation that equalizes two state coordinates.
template <typename Scalar>
struct Rotation {
  Scalar phi;
  Scalar z_i;
  Scalar z_j;
};

/// φ = arctan((z_j − z_i)/(z_j + z_i)); rotating (z_i, z_j) by −φ yields equal
/// components with the same Euclidean norm.
template <typename Scalar>
Rotation<Scalar> consolidate_rotation(Scalar z_i, Scalar z_j) {
  using std::atan;
  using std::cos;
  using std::sin;
  if (z_i + z_j == Scalar(0)) {
    throw UndefinedAngleError("consolidate_rotation: z_i + z_j = 0, angle undefined");
  }
  const Scalar phi = atan((z_j - z_i) / (z_j + z_i));
  const Scalar c = cos(phi);
  const Scalar s = sin(phi);
  return {phi, c * z_i + s * z_j, -s * z_i + c * z_j};
}

struct Segment {
  double start = 0.0;
  double end = 0.0;
  Vector eigenvalues;  // signed, constant over the segment
  Vector start_state;
  Vector control;      // v = −2 x(start)
};

/// Ordered DP moments with the segments between them and the needle events at them.
struct SegmentSchedule {
  std::vector<double> dps;
  std::vector<Segment> segments;
  std::vector<NeedleEvent> needle_events;
};

/// Schedule realizing an equalization chain from the starting state z0: one
/// segment per stage plus the terminal segment, needle events at every DP
/// except the last, where the positive eigenvalue carries the state to zero.
SegmentSchedule schedule_from_chain(const EigenChain& chain, const Vector& z0);

/// Schedule of consecutive scalar segments with eigenvalues `lambdas` whose
/// lengths follow the invariant λ_k Δt_k = a_o.
SegmentSchedule schedule_from_invariant(const Vector& lambdas, double ao_abs, double x0);

}  // namespace ipf
