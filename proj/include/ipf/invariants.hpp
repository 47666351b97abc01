#pragma once

#include <map>
#include <optional>
#include <string>

#include "ipf/core.hpp"

namespace ipf {

/// Admissible range of γ = β/α in which the model is feasible.
inline constexpr double kGammaMin = 0.00718;
inline constexpr double kGammaMax = 0.8;
/// Equilibrium γ and the invariant a tabulated there; the tabulated value
/// closes δ* = 0.089179639 and δ*a_o² = 0.044465455.
inline constexpr double kGammaEquilibrium = 0.5;
inline constexpr double kTabulatedAEquilibrium = 0.252;

/// LHS of 2(sin(γa_o) + γcos(γa_o)) − γe^{a_o}.
double invariant_equation(double ao, double gamma);

/// Negative-branch root of the DP invariant equation nearest zero, found on
/// [−3, −10⁻⁶] by scanning down from −10⁻⁶ and bisecting to 10⁻¹² absolute.
/// The equation is divided by γ first, so γ = 0 solves 2(a_o + 1) = e^{a_o}.
double solve_ao(double gamma);

/// a = a_o e^{−a_o} (1−γ²)^{1/2} (4 − 4e^{−a_o}cos(γa_o) + e^{−2a_o})^{−1/2} at a_o = |a_o|.
double invariant_a(double gamma, double ao_abs);

/// δ* = |a_o − a − a_o²| / a_o².
double delta_star(double ao_abs, double a);

/// δ* a_o²: the information sealed by cooperation.
double balance_defect(double ao_abs, double a);

struct Lifetime {
  double reversible = 0.0;    // T^r = Σ t_i
  double irreversible = 0.0;  // T^ir = δ* T^r
};

template <typename Range>
Lifetime lifetime_ratio(double delta_star_value, const Range& intervals) {
  Lifetime lt;
  for (double t : intervals) lt.reversible += t;
  lt.irreversible = delta_star_value * lt.reversible;
  return lt;
}

struct GammaRatios {
  bool converged = false;
  double gamma1 = 1.0;  // α_1/α_2
  double gamma2 = 1.0;  // α_2/α_3
  double residual1 = 0.0;
  double residual2 = 0.0;
  // residuals of both equations at the reference point (3.896, 2.19)
  double reference_residual1 = 0.0;
  double reference_residual2 = 0.0;
  std::string message;
};

/// Residuals of the two eigenvalue-ratio equations at (γ₁, γ₂, a).
std::pair<double, double> gamma_ratio_residuals(double gamma1, double gamma2, double a);

/// γ₂ from the second ratio equation: 1 + (γ₁−1)/(γ₁ − 2a(γ₁−1)).
double gamma2_from_gamma1(double gamma1, double a);

/// Nontrivial solution (γ₁ > 1) of the ratio pair. γ₂ is eliminated through
/// the second equation and the first is bisected on a scan of (1, 50].
/// Non-convergence is reported in the result, never thrown.
GammaRatios gamma_ratios(double a);

/// Interval ratios of a minimal-time triplet: γ₁₃ = t₃/t₁₁ = γ₁γ₂ and γ₂₃ = t₃/t₂₁ = γ₁.
struct TripletTiming {
  double gamma13 = 0.0;
  double gamma23 = 0.0;
  GammaRatios ratios;
};
TripletTiming triplet_timing(double a);

/// Ranged starting spectrum α_{i+1} = 0.2567^i · 0.4514^{1−i} α_1, i = 0..n−1.
Vector optimal_spectrum(int n, double alpha1);

enum class Provenance { Solved, PaperReference, DerivedByRatio };
std::string to_string(Provenance p);

/// Invariants of the optimal model at a given γ.
struct InvariantSet {
  double gamma = 0.0;
  double ao = 0.0;      // signed root (negative branch)
  double ao_abs = 0.0;
  double a_formula = 0.0;  // evaluated from the a_o relation
  double a = 0.0;          // value used downstream
  double bo = 0.0;
  double b = 0.0;
  double delta_star = 0.0;
  double defect = 0.0;  // δ* a_o²
  std::map<std::string, Provenance> provenance;
};

/// Solves every invariant at γ. At γ = 0.5 the downstream `a` is the tabulated
/// 0.252 (both values are kept); elsewhere it is the formula value.
InvariantSet make_invariant_set(double gamma);

}  // namespace ipf
