#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ipf/invariants.hpp"
#include "oracles.hpp"

using namespace ipf;

TEST_CASE("a_o roots on the negative branch") {
  CHECK(solve_ao(0.0) == doctest::Approx(oracle::ao_gamma0).epsilon(1e-11));
  CHECK(solve_ao(0.5) == doctest::Approx(oracle::ao_gamma_half).epsilon(1e-11));
  CHECK(solve_ao(1.0) == doctest::Approx(oracle::ao_gamma1).epsilon(1e-11));
  CHECK(solve_ao(kGammaMin) == doctest::Approx(oracle::ao_gamma_min).epsilon(1e-11));
  CHECK(solve_ao(kGammaMax) == doctest::Approx(oracle::ao_gamma_max).epsilon(1e-11));

  CHECK(std::abs(std::abs(solve_ao(0.0)) - oracle::quoted::ao_gamma0) <= 1e-3);
  CHECK(std::abs(std::abs(solve_ao(0.5)) - kLn2) / kLn2 <= 0.03);
  CHECK_THROWS_AS(solve_ao(-0.1), DomainError);
}

TEST_CASE("property: root residual on random gamma") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double gamma = g(gen);
    const double ao = solve_ao(gamma);
    CAPTURE(gamma);
    CHECK(ao < 0.0);
    // at γ > 0 the equation is solved in the γ-divided form
    CHECK(std::abs(invariant_equation(ao, gamma)) <= 1e-10 * std::max(1.0, 1.0 / gamma));
  }
}

TEST_CASE("invariant a") {
  CHECK(invariant_a(0.0, std::abs(oracle::ao_gamma0)) == doctest::Approx(oracle::a_gamma0).epsilon(1e-10));
  CHECK(std::abs(invariant_a(0.0, std::abs(solve_ao(0.0))) - oracle::quoted::a_gamma0) <= 2e-3);
  CHECK(invariant_a(0.0, 0.768) == doctest::Approx(0.2320).epsilon(1e-3));
  CHECK(invariant_a(0.5, std::abs(oracle::ao_gamma_half)) ==
        doctest::Approx(oracle::a_gamma_half_formula).epsilon(1e-10));
  CHECK(invariant_a(1.0, 0.5) == 0.0);
  CHECK_THROWS_AS(invariant_a(1.2, 0.5), DomainError);
}

TEST_CASE("lifetime ratio and balance") {
  CHECK(delta_star(std::abs(oracle::ao_gamma_half), kTabulatedAEquilibrium) ==
        doctest::Approx(oracle::delta_star_half).epsilon(1e-12));
  CHECK(delta_star(0.7066, 0.2517) == doctest::Approx(0.08918).epsilon(1e-3));
  CHECK(delta_star(0.768, 0.232) == doctest::Approx(0.09126).epsilon(1e-3));
  CHECK(delta_star(0.6, 0.6 - 0.36) == doctest::Approx(0.0));
  CHECK(balance_defect(0.768, 0.232) == doctest::Approx(0.05382).epsilon(1e-3));
  CHECK(balance_defect(0.6, 0.6 - 0.36) == doctest::Approx(0.0));
  CHECK_THROWS_AS(delta_star(0.0, 0.1), InputError);

  const std::vector<double> halves{2642.0, 2642.0};
  CHECK(lifetime_ratio(oracle::quoted::delta_star, halves).irreversible ==
        doctest::Approx(oracle::quoted::lifetime_min).epsilon(1e-3));
  CHECK(lifetime_ratio(0.848, halves).irreversible == doctest::Approx(oracle::quoted::lifetime_max).epsilon(1e-3));
  CHECK(lifetime_ratio(0.0, halves).irreversible == 0.0);
  CHECK(lifetime_ratio(0.5, std::array<double, 3>{1.0, 2.0, 3.0}).reversible == 6.0);
}

TEST_CASE("property: balance closes with the computed defect") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> g(kGammaMin, kGammaMax);
  for (int trial = 0; trial < 100; ++trial) {
    const double gamma = g(gen);
    const double ao = std::abs(solve_ao(gamma));
    const double a = invariant_a(gamma, ao);
    const double lhs = ao - a - ao * ao;
    const double sign = lhs > 0 ? -1.0 : 1.0;
    CHECK(std::abs(lhs + sign * balance_defect(ao, a)) <= 1e-12);
  }
}

TEST_CASE("invariant set at equilibrium keeps both a values") {
  const auto inv = make_invariant_set(0.5);
  CHECK(inv.ao == doctest::Approx(oracle::ao_gamma_half));
  CHECK(inv.a == kTabulatedAEquilibrium);
  CHECK(inv.a_formula == doctest::Approx(oracle::a_gamma_half_formula));
  CHECK(inv.delta_star == doctest::Approx(oracle::quoted::delta_star).epsilon(1e-4));
  CHECK(std::abs(inv.defect - oracle::quoted::defect) <= 1e-3);
  CHECK(inv.bo == doctest::Approx(0.5 * inv.ao_abs));
  CHECK(inv.provenance.at("a") == Provenance::PaperReference);
  CHECK(inv.provenance.at("bo") == Provenance::DerivedByRatio);
  CHECK(to_string(Provenance::Solved) == "solved");

  const auto low = make_invariant_set(0.1);
  CHECK(low.a == low.a_formula);
  CHECK(low.provenance.at("a") == Provenance::Solved);
}

TEST_CASE("eigenvalue-ratio equations") {
  CHECK(gamma2_from_gamma1(1.0, 0.252) == 1.0);
  CHECK(gamma2_from_gamma1(3.896, 0.252) == doctest::Approx(oracle::gamma2_at_3896).epsilon(1e-7));

  const auto g = gamma_ratios(kTabulatedAEquilibrium);
  REQUIRE(g.converged);
  CHECK(g.gamma1 == doctest::Approx(oracle::gamma1).epsilon(1e-9));
  CHECK(g.gamma2 == doctest::Approx(oracle::gamma2).epsilon(1e-9));
  CHECK(std::abs(g.residual1) < 1e-9);
  CHECK(std::abs(g.residual2) < 1e-9);
  // the reference point does not satisfy the first equation
  CHECK(std::abs(g.reference_residual1) > 1e-2);

  const auto t = triplet_timing(kTabulatedAEquilibrium);
  CHECK(t.gamma23 == doctest::Approx(2.215).epsilon(1e-3));
  CHECK(t.gamma13 == doctest::Approx(oracle::gamma1 * oracle::gamma2));

  const auto bad = gamma_ratios(-1.0);
  CHECK_FALSE(bad.converged);
  CHECK_FALSE(bad.message.empty());
}

TEST_CASE("optimal spectrum") {
  const Vector s = optimal_spectrum(3, 1.0);
  CHECK(s(0) == 1.0);
  CHECK(s(1) == doctest::Approx(0.2567));
  CHECK(s(2) == doctest::Approx(0.14597).epsilon(1e-4));
  CHECK(s(0) / s(1) == doctest::Approx(oracle::quoted::ratio12).epsilon(1e-3));
  CHECK(s(1) / s(2) == doctest::Approx(oracle::quoted::ratio23).epsilon(1e-3));
  CHECK(optimal_spectrum(2, 3.0)(0) == 3.0);
  CHECK_THROWS_AS(optimal_spectrum(0, 1.0), InputError);
  CHECK_THROWS_AS(optimal_spectrum(2, 0.0), InputError);

  for (int n = 1; n <= 64; ++n) {
    const Vector v = optimal_spectrum(n, 1.0);
    for (int i = 1; i < n; ++i) {
      if (!(std::abs(v(i)) < std::abs(v(i - 1)))) FAIL_CHECK("not strictly decreasing at n=" << n << " i=" << i);
    }
  }
}
