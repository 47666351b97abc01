#pragma once

#include <string>
#include <vector>

#include "ipf/control.hpp"
#include "ipf/invariants.hpp"

namespace ipf {

/// Information balance of one triplet at a given γ (nats unless noted).
struct TripletReport {
  double gamma = 0.0;
  double ao_abs = 0.0;
  double a = 0.0;
  double delta_star = 0.0;
  double gamma13 = 0.0;  // t₃/t₁₁
  double gamma23 = 0.0;  // t₃/t₂₁
  double contribution13 = 0.0;  // a(γ₁₃ − 1), delivered by the regular control at t₁₃
  double contribution23 = 0.0;  // a(γ₂₃ − 1)
  double consumed13 = 0.0;      // α₁₃t₁₃
  double consumed23 = 0.0;      // α₂₃t₂₃
  double doublet_closure = 0.0;   // α₁₃t₁₃ + α₂₃t₂₃ + 2δ*a_o²
  double doublet_residual = 0.0;  // closure − a_o²
  double total_nats = 0.0;        // 4a_o² + 3a
  double total_bits = 0.0;
  double node_transfer_nats = 0.0;  // a_o² + a − δ*a_o²
  double node_bits = 0.0;
  GammaRatios ratios;
};

/// Information consumed by the dynamics over an interval carrying the control
/// contribution `delivered`: the renovated eigenvalue times the interval,
/// eigen_step(−x, 1) = x e^{−x} / (2 − e^{−x}).
double consumed_information(double delivered);

TripletReport triplet_accounting(const InvariantSet& inv);

struct InfoNode {
  int level = 0;                 // 1-based position in the hierarchy
  std::vector<int> members;      // spectrum indices joined at this node (−1 = previous node)
  std::vector<double> member_eigenvalues;
  double alpha3 = 0.0;           // joined node eigenvalue α_r³ = 3α_jt
  double cooperation_time = 0.0; // t_r = |a_o| / α_j0
  double info_nats = 0.0;
  double info_bits = 0.0;
  bool carries_leftover = false;
};

struct InfoNetwork {
  int n = 0;
  double gamma = 0.0;
  double alpha1 = 0.0;
  Vector spectrum;
  std::vector<InfoNode> nodes;
  std::string code;
  double total_nats = 0.0;
  double total_bits = 0.0;
  std::vector<std::string> warnings;
  int node_count() const { return static_cast<int>(nodes.size()); }
};

/// Letters of the switch code: a regular-control switch and a needle switch.
inline constexpr char kRegularLetter = 'A';  // bit 0
inline constexpr char kNeedleLetter = 'B';   // bit 1

/// Code of one triplet: needle then regular switch at each of its two DPs.
inline constexpr const char* kTripletCode = "BABA";

/// Hierarchical network from the ranged spectrum of `n` modes. The first
/// triplet joins modes 1..3; every following node joins the running node with
/// the next two modes. An unpaired last mode (even n) attaches to the final
/// node and is flagged.
InfoNetwork build_in(int n, double gamma, double alpha1);

/// Indented text outline of the tree, one line per node.
std::string outline(const InfoNetwork& net);

/// One letter per control switch of the schedule, ordered by time with the
/// needle ahead of the regular control it enables.
std::string emit_code(const SegmentSchedule& schedule);
std::string emit_code(const InfoNetwork& net);

/// Switch sequence with each moment quantized to the invariant grid
/// `unit` = |a_o|/α_1, e.g. "B@4 A@4 B@9 A@9".
std::string emit_timed_code(const SegmentSchedule& schedule, double unit);

struct MaxRatio {
  int n = 0;
  double formula = 0.0;         // 2.21 · 3.89^{n/2}
  double spectrum_ratio = 0.0;  // α_1/α_n of the ranged spectrum (1 for n ≤ 1)
  double relative_gap = 0.0;    // |formula − spectrum_ratio| / spectrum_ratio
};
MaxRatio max_ratio_check(int n);

}  // namespace ipf
