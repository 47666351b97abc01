#include <doctest.h>

#include <cmath>

#include "ipf/network.hpp"
#include "oracles.hpp"

using namespace ipf;

TEST_CASE("triplet accounting at equilibrium") {
  const auto rep = triplet_accounting(make_invariant_set(0.5));
  CHECK(rep.contribution13 == doctest::Approx(oracle::contribution13).epsilon(1e-9));
  CHECK(rep.contribution23 == doctest::Approx(oracle::contribution23).epsilon(1e-9));
  CHECK(rep.consumed13 == doctest::Approx(oracle::consumed13).epsilon(1e-9));
  CHECK(rep.consumed23 == doctest::Approx(oracle::consumed23).epsilon(1e-9));
  CHECK(rep.total_nats == doctest::Approx(4 * std::pow(oracle::ao_gamma_half, 2) + 3 * 0.252));
  CHECK(rep.total_bits == doctest::Approx(rep.total_nats / kLn2));
  CHECK(rep.node_bits == doctest::Approx(rep.node_transfer_nats / kLn2));

  CHECK(std::abs(rep.total_nats - oracle::quoted::total_nats) / oracle::quoted::total_nats <= 0.02);
  CHECK(std::abs(rep.total_bits - oracle::quoted::total_bits) / oracle::quoted::total_bits <= 0.02);
  CHECK(std::abs(rep.node_transfer_nats - oracle::quoted::node_nats) / oracle::quoted::node_nats <= 0.02);
  CHECK(std::abs(rep.node_bits - oracle::quoted::node_bits) / oracle::quoted::node_bits <= 0.02);
  CHECK(std::abs(rep.contribution23 - oracle::quoted::contribution23) / oracle::quoted::contribution23 <= 0.01);
  const double ao2 = rep.ao_abs * rep.ao_abs;
  CHECK(std::abs(rep.doublet_closure - ao2) / ao2 <= 0.02);
  CHECK(rep.doublet_residual == doctest::Approx(rep.doublet_closure - ao2));
}

TEST_CASE("consumed information is the renovated rate over a unit interval") {
  CHECK(consumed_information(1.0) == doctest::Approx(std::exp(-1.0) / (2.0 - std::exp(-1.0))));
  CHECK(consumed_information(1e-9) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("incomplete invariant sets are refused") {
  InvariantSet inv;
  CHECK_THROWS_AS(triplet_accounting(inv), InputError);
  inv = make_invariant_set(0.5);
  inv.delta_star = std::nan("");
  CHECK_THROWS_AS(triplet_accounting(inv), InputError);
}

TEST_CASE("information network") {
  SUBCASE("n = 1 is empty") {
    const auto net = build_in(1, 0.5, 1.0);
    CHECK(net.node_count() == 0);
    CHECK(net.code.empty());
    CHECK(net.warnings.size() == 1);
  }
  SUBCASE("n = 3 has one node and a four-letter code") {
    const auto net = build_in(3, 0.5, 1.0);
    REQUIRE(net.node_count() == 1);
    CHECK(net.code == kTripletCode);
    CHECK(net.code.size() == 4);
    CHECK(net.nodes[0].members == std::vector<int>{0, 1, 2});
    CHECK(std::abs(net.nodes[0].info_bits - oracle::quoted::node_bits) / oracle::quoted::node_bits <= 0.02);
    CHECK(net.nodes[0].cooperation_time == doctest::Approx(std::abs(oracle::ao_gamma_half) / net.spectrum(2)));
    CHECK(net.total_nats == doctest::Approx(net.nodes[0].info_nats));
  }
  SUBCASE("n = 4 attaches the leftover mode") {
    const auto net = build_in(4, 0.5, 1.0);
    REQUIRE(net.node_count() == 1);
    CHECK(net.nodes[0].carries_leftover);
    CHECK(net.nodes[0].members.back() == 3);
    CHECK_FALSE(net.warnings.empty());
  }
  SUBCASE("n = 5 has two nodes with decreasing magnitudes") {
    const auto net = build_in(5, 0.5, 1.0);
    REQUIRE(net.node_count() == 2);
    CHECK(net.nodes[1].members == std::vector<int>{-1, 3, 4});
    CHECK(net.nodes[1].member_eigenvalues[0] == net.nodes[0].alpha3);
    CHECK(std::abs(net.nodes[1].alpha3) < std::abs(net.nodes[0].alpha3));
    CHECK(net.code.size() == 8);
  }
  SUBCASE("gamma outside the admissible range") {
    CHECK_THROWS_AS(build_in(3, 0.9, 1.0), DomainError);
    CHECK_THROWS_AS(build_in(3, 0.001, 1.0), DomainError);
    CHECK_THROWS_AS(build_in(3, 0.5, -1.0), InputError);
  }
}

TEST_CASE("property: node count, code length and monotone nodes for odd n") {
  for (int n = 3; n <= 41; n += 2) {
    for (double gamma : {kGammaMin, 0.25, 0.5, kGammaMax}) {
      const auto net = build_in(n, gamma, 1.0);
      CAPTURE(n);
      CAPTURE(gamma);
      CHECK(net.node_count() == (n - 1) / 2);
      CHECK(net.code.size() == 4u * static_cast<unsigned>(net.node_count()));
      for (int r = 1; r < net.node_count(); ++r) {
        CHECK(std::abs(net.nodes[r].alpha3) < std::abs(net.nodes[r - 1].alpha3));
      }
    }
  }
}

TEST_CASE("outline lists every node") {
  const auto text = outline(build_in(5, 0.5, 1.0));
  CHECK(text.find("node 1:") != std::string::npos);
  CHECK(text.find("node 2:") != std::string::npos);
  CHECK(text.find("BABABABA") != std::string::npos);
}

TEST_CASE("schedule codes") {
  CHECK(emit_code(SegmentSchedule{}).empty());
  CHECK(emit_timed_code(SegmentSchedule{}, 1.0).empty());

  Vector lambdas(3);
  lambdas << -1.0, -0.5, -0.25;
  const auto sched = schedule_from_invariant(lambdas, 0.7, 1.0);
  // two DPs, each a needle followed by the regular switch
  CHECK(emit_code(sched) == "BABA");
  CHECK(emit_timed_code(sched, 0.7) == "B@1 A@1 B@3 A@3");
  CHECK_THROWS_AS(emit_timed_code(sched, 0.0), InputError);

  // a four-mode chain has three DP switches plus the needles before the last DP
  Vector spectrum(4);
  spectrum << 1.0, 0.4, 0.15, 0.05;
  const auto chain_sched = schedule_from_chain(build_equalization_chain(spectrum, 4), Vector::Ones(4));
  CHECK(emit_code(chain_sched) == "BABAA");
}

TEST_CASE("maximal ratio formula against the spectrum") {
  CHECK(max_ratio_check(0).formula == doctest::Approx(2.21));
  const auto two = max_ratio_check(2);
  CHECK(two.formula == doctest::Approx(8.5969).epsilon(1e-4));
  CHECK(two.spectrum_ratio == doctest::Approx(oracle::quoted::ratio12).epsilon(1e-3));
  CHECK(two.relative_gap > 1.0);
  CHECK(max_ratio_check(4).formula == doctest::Approx(33.44).epsilon(1e-3));
  CHECK_THROWS_AS(max_ratio_check(-1), InputError);
}
