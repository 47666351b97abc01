#include <doctest.h>

#include <cmath>
#include <random>

#include "ipf/control.hpp"
#include "oracles.hpp"

using namespace ipf;

TEST_CASE("starting control from ensemble moments") {
  EnsembleStats s;
  s.grid = {0.0, 1.0};
  Matrix r(2, 2);
  r << 4.0, 0.0, 0.0, 9.0;
  Matrix b(2, 2);
  b << 1.0, 0.0, 0.0, 0.5;
  Vector m(2);
  m << 1.0, -0.5;
  for (int k = 0; k < 2; ++k) {
    s.r.push_back(r);
    s.b.push_back(b);
    s.mean.push_back(m);
  }
  const auto sc = starting_control(s, 0.5);
  CHECK(sc.v(0) == doctest::Approx(-2.0));
  CHECK(sc.v(1) == doctest::Approx(1.0));
  CHECK(sc.x_start(0) == doctest::Approx(2.0));
  CHECK(sc.x_start(1) == doctest::Approx(3.0));
  CHECK(sc.A(0, 0) == doctest::Approx(0.25));
  CHECK(sc.A(1, 1) == doctest::Approx(0.5 / 9.0));
  CHECK(sc.u(0) == doctest::Approx(-0.5));
}

TEST_CASE("step and needle control") {
  CHECK(step_control(Vector::Constant(1, 0.5))(0) == -1.0);
  Vector xm(2), xp(2);
  xm << 1.0, 2.0;
  xp << 0.25, -1.0;
  const auto ev = needle_control(xm, xp, 0.7);
  CHECK(ev.tau == 0.7);
  CHECK(ev.v_minus(1) == -4.0);
  CHECK(ev.v_plus(1) == 2.0);
  CHECK(ev.delta_v(0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(needle_control(xm, Vector::Zero(1)), InputError);

  // segment closed form agrees with the chain's state_step
  CHECK(segment_state(2.0, 1.0, 0.5) == doctest::Approx(oracle::state_step_1_half_2));
  CHECK(segment_state(2.0, 1.0, 0.5) == doctest::Approx(state_step(2.0, 1.0, 0.5)));
}

namespace {

ModeTrace two_minus_exp(double rate) {
  return {[rate](double t) { return 2.0 - std::exp(rate * t); },
          [rate](double t) { return -rate * std::exp(rate * t); }};
}

ModeTrace decay(double rate, double scale = 1.0) {
  return {[=](double t) { return scale * std::exp(-rate * t); },
          [=](double t) { return -rate * scale * std::exp(-rate * t); }};
}

}  // namespace

TEST_CASE("DP detection") {
  const auto grid = make_grid(0.0, 1.0, 0.01);

  SUBCASE("two segment modes cross at ln((2 + sqrt 10)/3)") {
    const auto det = detect_dp({two_minus_exp(1.0), two_minus_exp(2.0)}, grid);
    REQUIRE(det.moments.size() == 1);
    CHECK(std::abs(det.moments[0].tau - oracle::dp_two_mode) < 1e-9);
    // both speeds blow up at each zero, so those cells hold no sign change
    CHECK(det.warnings.empty());
  }
  SUBCASE("a bracket around a vanishing state is skipped") {
    auto line = [](double c) {
      return ModeTrace{[c](double t) { return t - c; }, [](double) { return 1.0; }};
    };
    const auto det = detect_dp({line(0.503), line(0.507)}, grid);
    CHECK(det.moments.empty());
    REQUIRE(det.warnings.size() == 1);
    CHECK(det.warnings[0].find("zero state") != std::string::npos);
  }
  SUBCASE("agrees with a dense scan") {
    const std::vector<ModeTrace> modes{two_minus_exp(1.0), two_minus_exp(2.0)};
    auto gap = [&](double t) {
      return std::abs(modes[0].x_dot(t) / modes[0].x(t)) - std::abs(modes[1].x_dot(t) / modes[1].x(t));
    };
    double found = -1.0;
    const double lo = std::log(2.0) / 2 + 1e-3, hi = std::log(2.0) - 1e-3;
    for (double t = lo; t + 1e-6 < hi; t += 1e-6) {
      if ((gap(t) > 0) != (gap(t + 1e-6) > 0)) {
        found = t;
        break;
      }
    }
    const auto det = detect_dp(modes, grid);
    REQUIRE(!det.moments.empty());
    CHECK(std::abs(det.moments[0].tau - found) < 2e-6);
  }
  SUBCASE("identical speeds report the grid start") {
    const auto det = detect_dp({decay(1.0), decay(1.0, 3.0)}, grid);
    REQUIRE(det.moments.size() == 1);
    CHECK(det.moments[0].tau == 0.0);
  }
  SUBCASE("disjoint speeds never meet") {
    const auto det = detect_dp({decay(1.0), decay(3.0)}, grid);
    CHECK(det.moments.empty());
    CHECK(det.warnings.empty());
  }
  SUBCASE("grid too short") {
    CHECK_THROWS_AS(detect_dp({decay(1.0)}, {0.0}), InputError);
  }
}

TEST_CASE("consolidating rotation") {
  const auto rot = consolidate_rotation(1.0, 3.0);
  CHECK(rot.phi == doctest::Approx(std::atan(0.5)));
  CHECK(rot.z_i == doctest::Approx(std::sqrt(5.0)));
  CHECK(rot.z_j == doctest::Approx(std::sqrt(5.0)));

  const auto same = consolidate_rotation(2.0, 2.0);
  CHECK(same.phi == 0.0);
  CHECK(same.z_i == 2.0);

  const auto axis = consolidate_rotation(0.0, 1.0);
  CHECK(axis.phi == doctest::Approx(std::atan(1.0)));
  CHECK(axis.z_i == doctest::Approx(std::sqrt(0.5)));
  CHECK(axis.z_j == doctest::Approx(std::sqrt(0.5)));

  CHECK_THROWS_AS(consolidate_rotation(1.0, -1.0), UndefinedAngleError);

  const auto f = consolidate_rotation(1.0f, 3.0f);
  CHECK(f.z_i == doctest::Approx(f.z_j).epsilon(1e-5));
}

TEST_CASE("property: rotation equalizes and preserves the norm") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double zi = coord(gen), zj = coord(gen);
    if (std::abs(zi + zj) < 1e-9) continue;
    const auto rot = consolidate_rotation(zi, zj);
    const double norm = std::hypot(zi, zj);
    const bool equal = std::abs(rot.z_i - rot.z_j) <= 1e-12 * std::max(1.0, norm);
    const bool kept = std::abs(std::hypot(rot.z_i, rot.z_j) - norm) <= 1e-12 * std::max(1.0, norm);
    if (!equal || !kept) {
      CAPTURE(zi);
      CAPTURE(zj);
      FAIL_CHECK("rotation property violated");
    }
    ++checked;
  }
  CHECK(checked > 9990);
}

TEST_CASE("schedule from a chain") {
  Vector spectrum(3);
  spectrum << 1.0, 0.2567, 0.1;
  const auto chain = build_equalization_chain(spectrum, 3);
  const Vector z0 = Vector::Ones(3);
  const auto sched = schedule_from_chain(chain, z0);
  REQUIRE(sched.dps.size() == 2);
  REQUIRE(sched.segments.size() == 3);
  CHECK(sched.needle_events.size() == 1);
  CHECK(sched.segments.front().start == 0.0);
  for (std::size_t k = 1; k < sched.segments.size(); ++k) {
    CHECK(sched.segments[k].start == sched.segments[k - 1].end);
  }
  CHECK(sched.segments.back().end == doctest::Approx(chain.horizon()));
  CHECK((sched.segments[0].eigenvalues.array() < 0).all());
  CHECK((sched.segments.back().eigenvalues.array() > 0).all());
  CHECK(sched.segments[0].control.isApprox(-2.0 * z0));
}

TEST_CASE("schedule from the invariant") {
  Vector lambdas(3);
  lambdas << -2.0, -1.0, -0.5;
  const double ao = 0.70612;
  const auto sched = schedule_from_invariant(lambdas, ao, 1.0);
  REQUIRE(sched.segments.size() == 3);
  CHECK(sched.dps.size() == 2);
  CHECK(sched.needle_events.size() == 2);
  for (int k = 0; k < 3; ++k) {
    const auto& seg = sched.segments[k];
    CHECK(std::abs(lambdas(k)) * (seg.end - seg.start) == doctest::Approx(ao));
  }
  CHECK_THROWS_AS(schedule_from_invariant(lambdas, 0.0, 1.0), InputError);
  CHECK_THROWS_AS(schedule_from_invariant(Vector::Zero(1), ao, 1.0), InputError);
}
