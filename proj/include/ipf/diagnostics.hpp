#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ipf/control.hpp"

namespace ipf {

/// Local Lyapunov exponent: least-squares slope through the origin of
/// ln(x(t)/x₀) against t − t₀ over the sampled window. Exact for pure exponentials.
double lce_local(const std::vector<double>& t, const std::vector<double>& x, double x0);

/// Samples `trace` at `samples` points on [t0, t0 + window] and fits as above.
double lce_local(const std::function<double(double)>& trace, double t0, double window, int samples = 33);

/// Path-functional production rate Tr A.
double pfr(const Matrix& A);

enum class Stability { Instable, AsymptoticallyStable, Steady };
std::string to_string(Stability s);

/// Sign of σ with |σ| ≤ tol treated as steady.
Stability classify(double sigma, double tol = 1e-12);

struct SegmentDiagnostics {
  double start = 0.0;
  double end = 0.0;
  Vector lce;  // per mode, just after the segment starts
  Stability classification = Stability::Steady;  // from the largest exponent
};

/// Exponents on both sides of a DP.
struct SignFlip {
  double tau = 0.0;
  bool needle = false;  // a needle control acts at τ
  Vector lce_before;  // on the renovated eigenvalues at τ − o
  Vector lce_after;   // after the needle control at τ + o
  bool flipped = false;  // every mode changed sign
  double pfr = 0.0;      // Tr A(τ − o)
  double positive_sum = 0.0;  // Σ of the positive eigenvalues at τ − o
};

struct DiagnosticsReport {
  std::vector<SegmentDiagnostics> segments;
  std::vector<SignFlip> sign_flips;
  std::vector<std::string> warnings;
};

/// Noiseless replay of a schedule: a disturbance on each mode evolves as
/// e^{λt} with the eigenvalue in force, and the exponents are fitted on a
/// window of `window_fraction` of the adjacent segment.
DiagnosticsReport diagnose(const SegmentSchedule& schedule, double window_fraction = 0.05);

}  // namespace ipf
