#include "ipf/invariants.hpp"

#include <sstream>

#include "ipf/roots.hpp"

namespace ipf {

double invariant_equation(double ao, double gamma) {
  return 2.0 * (std::sin(gamma * ao) + gamma * std::cos(gamma * ao)) - gamma * std::exp(ao);
}

namespace {

// Invariant equation divided by γ; continuous at γ = 0.
double reduced_equation(double ao, double gamma) {
  const double sinc = gamma == 0.0 ? ao : std::sin(gamma * ao) / gamma;
  return 2.0 * (sinc + std::cos(gamma * ao)) - std::exp(ao);
}

}  // namespace

double solve_ao(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("solve_ao: gamma must be >= 0");
  auto f = [gamma](double ao) { return reduced_equation(ao, gamma); };
  const auto bracket = roots::first_sign_change(f, -1e-6, -3.0, 3000);
  if (!bracket) {
    std::ostringstream os;
    os << "solve_ao: no sign change on [-3, -1e-6] at gamma=" << gamma;
    throw NoRootError(os.str());
  }
  return *roots::bisect(f, bracket->lo, bracket->hi, 1e-12);
}

double invariant_a(double gamma, double ao_abs) {
  if (!(gamma >= 0.0) || gamma > 1.0) throw DomainError("invariant_a: gamma must lie in [0, 1]");
  if (gamma == 1.0) return 0.0;
  const double e = std::exp(-ao_abs);
  const double denom = 4.0 - 4.0 * e * std::cos(gamma * ao_abs) + e * e;
  return ao_abs * e * std::sqrt(1.0 - gamma * gamma) / std::sqrt(denom);
}

double delta_star(double ao_abs, double a) {
  if (!(ao_abs > 0.0)) throw InputError("delta_star: |a_o| must be positive");
  const double ao2 = ao_abs * ao_abs;
  return std::abs(ao_abs - a - ao2) / ao2;
}

double balance_defect(double ao_abs, double a) { return delta_star(ao_abs, a) * ao_abs * ao_abs; }

std::pair<double, double> gamma_ratio_residuals(double gamma1, double gamma2, double a) {
  const double half_ea = 0.5 * std::exp(a);
  const double rhs1 = (std::exp(a * gamma1 * gamma2) - half_ea) / (std::exp(a * gamma2) - half_ea);
  return {gamma1 - rhs1, gamma2 - gamma2_from_gamma1(gamma1, a)};
}

double gamma2_from_gamma1(double gamma1, double a) {
  return 1.0 + (gamma1 - 1.0) / (gamma1 - 2.0 * a * (gamma1 - 1.0));
}

GammaRatios gamma_ratios(double a) {
  GammaRatios out;
  const auto ref = gamma_ratio_residuals(3.896, 2.19, a);
  out.reference_residual1 = ref.first;
  out.reference_residual2 = ref.second;
  if (!(a > 0.0)) {
    out.message = "a must be positive";
    return out;
  }
  auto f = [a](double g1) { return gamma_ratio_residuals(g1, gamma2_from_gamma1(g1, a), a).first; };
  // γ₁ = 1 is the trivial root; start just above it
  const auto bracket = roots::first_sign_change(f, 1.0 + 1e-6, 50.0, 50000);
  if (!bracket) {
    out.message = "no nontrivial sign change of the first equation on (1, 50]";
    return out;
  }
  const auto g1 = roots::bisect(f, bracket->lo, bracket->hi, 1e-13, 1e-14);
  if (!g1) {
    out.message = "bisection failed";
    return out;
  }
  out.gamma1 = *g1;
  out.gamma2 = gamma2_from_gamma1(*g1, a);
  const auto res = gamma_ratio_residuals(out.gamma1, out.gamma2, a);
  out.residual1 = res.first;
  out.residual2 = res.second;
  out.converged = std::abs(res.first) < 1e-9 && std::abs(res.second) < 1e-9;
  out.message = out.converged ? "converged" : "residual above 1e-9";
  return out;
}

TripletTiming triplet_timing(double a) {
  TripletTiming tt;
  tt.ratios = gamma_ratios(a);
  tt.gamma13 = tt.ratios.gamma1 * tt.ratios.gamma2;
  tt.gamma23 = tt.ratios.gamma1;
  return tt;
}

Vector optimal_spectrum(int n, double alpha1) {
  if (n < 1) throw InputError("optimal_spectrum: n must be >= 1");
  if (alpha1 == 0.0 || !std::isfinite(alpha1)) throw InputError("optimal_spectrum: alpha1 must be nonzero");
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = std::pow(0.2567, i) * std::pow(0.4514, 1 - i) * alpha1;
  s(0) = alpha1;  // 0.4514 · 0.4514⁻¹ exactly
  return s;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Solved: return "solved";
    case Provenance::PaperReference: return "paper-reference";
    case Provenance::DerivedByRatio: return "derived-by-ratio";
  }
  return "unknown";
}

InvariantSet make_invariant_set(double gamma) {
  InvariantSet inv;
  inv.gamma = gamma;
  inv.ao = solve_ao(gamma);
  inv.ao_abs = std::abs(inv.ao);
  inv.a_formula = invariant_a(gamma, inv.ao_abs);
  inv.provenance["ao"] = Provenance::Solved;
  inv.provenance["a_formula"] = Provenance::Solved;
  if (std::abs(gamma - kGammaEquilibrium) < 1e-12) {
    inv.a = kTabulatedAEquilibrium;
    inv.provenance["a"] = Provenance::PaperReference;
  } else {
    inv.a = inv.a_formula;
    inv.provenance["a"] = Provenance::Solved;
  }
  inv.bo = gamma * inv.ao_abs;
  inv.b = gamma * inv.a;
  inv.provenance["bo"] = Provenance::DerivedByRatio;
  inv.provenance["b"] = Provenance::DerivedByRatio;
  inv.delta_star = delta_star(inv.ao_abs, inv.a);
  inv.defect = inv.delta_star * inv.ao_abs * inv.ao_abs;
  inv.provenance["delta_star"] = Provenance::Solved;
  inv.provenance["defect"] = Provenance::Solved;
  return inv;
}

}  // namespace ipf
