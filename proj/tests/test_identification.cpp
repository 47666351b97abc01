#include <doctest.h>

#include <cmath>
#include <random>

#include "ipf/eigenchain.hpp"
#include "ipf/identification.hpp"

using namespace ipf;

namespace {

EnsembleStats scalar_stats(double T, double h, const std::function<double(double)>& r,
                           const std::function<double(double)>& b) {
  EnsembleStats s;
  s.grid = make_grid(0.0, T, h);
  for (double t : s.grid) {
    s.r.push_back(Matrix::Constant(1, 1, r(t)));
    s.mean.push_back(Vector::Zero(1));
    s.b.push_back(Matrix::Constant(1, 1, b(t)));
  }
  return s;
}

}  // namespace

TEST_CASE("reduced control on a stationary OU ensemble recovers -theta") {
  const double theta = 2.0, sigma = 1.0;
  const auto model = ornstein_uhlenbeck(theta, sigma, 0.0, sigma * sigma / (2 * theta), 0.0, 1.0);
  SimulationOptions o;
  o.n_paths = 20000;
  o.seed = 8;
  const auto stats = simulate_ensemble(model, o);
  const auto op = identify_reduced(stats, ReducedControl::none(), 0.8);
  CHECK(op.A(0, 0) == doctest::Approx(-theta).epsilon(0.05));
  CHECK(op.method == IdentificationMethod::ReducedControl);

  // v = −2x flips the sign of x + v and leaves r_v = r
  const auto fb = identify_reduced(stats, ReducedControl::feedback(1, -2.0), 0.8);
  CHECK(fb.A(0, 0) == doctest::Approx(op.A(0, 0)));
}

TEST_CASE("reduced control with identity moments") {
  EnsembleStats s;
  s.grid = {0.0, 1.0};
  s.r = {Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  s.b = s.r;
  s.mean = {Vector::Zero(2), Vector::Zero(2)};
  CHECK(identify_reduced(s, ReducedControl::none(), 0.5).A.isApprox(-Matrix::Identity(2, 2)));
  // scaling b and r together leaves A unchanged
  for (auto& m : s.r) m *= 4.0;
  for (auto& m : s.b) m *= 4.0;
  CHECK(identify_reduced(s, ReducedControl::none(), 0.5).A.isApprox(-Matrix::Identity(2, 2)));
}

TEST_CASE("covariance ratio") {
  SUBCASE("r = e^{1.4t} gives 0.7") {
    const auto s = scalar_stats(1.0, 1e-3, [](double t) { return std::exp(1.4 * t); }, [](double) { return 1.0; });
    const auto op = identify_covariance_ratio(s, 0.6);
    CHECK(op.A(0, 0) == doctest::Approx(0.7).epsilon(1e-5));
    CHECK(op.diagnostics.at("commutator") == doctest::Approx(0.0));
  }
  SUBCASE("constant r gives 0") {
    const auto s = scalar_stats(1.0, 1e-2, [](double) { return 2.0; }, [](double) { return 1.0; });
    CHECK(std::abs(identify_covariance_ratio(s, 0.5).A(0, 0)) < 1e-12);
  }
  SUBCASE("decaying r = e^{-t} gives -0.5") {
    const auto s = scalar_stats(1.0, 1e-3, [](double t) { return std::exp(-t); }, [](double) { return 1.0; });
    CHECK(identify_covariance_ratio(s, 0.5).A(0, 0) == doctest::Approx(-0.5).epsilon(1e-5));
  }
  SUBCASE("OU relaxation from r(0) = 1 toward 0.5 gives -0.5 at t = 0") {
    const auto s = scalar_stats(1.0, 1e-3, [](double t) { return 0.5 + 0.5 * std::exp(-2 * t); },
                                [](double) { return 0.5; });
    CHECK(identify_covariance_ratio(s, 0.0).A(0, 0) == doctest::Approx(-0.5).epsilon(1e-5));
  }
  SUBCASE("DP identity uses 2b as the rate") {
    const auto s = scalar_stats(1.0, 1e-2, [](double) { return 4.0; }, [](double) { return 1.0; });
    const auto op = identify_covariance_ratio(s, 0.5, RateSource::DpDiffusion);
    CHECK(op.A(0, 0) == doctest::Approx(0.25));
    CHECK(op.notes.at("rate_source") == "dp-identity-2b");
  }
  SUBCASE("singular r is refused") {
    const auto s = scalar_stats(1.0, 1e-2, [](double) { return 0.0; }, [](double) { return 1.0; });
    CHECK_THROWS_AS(identify_covariance_ratio(s, 0.5), DegenerateEnsembleError);
  }
}

TEST_CASE("dispersion window") {
  SUBCASE("constant b gives 1/(2w)") {
    const auto s = scalar_stats(2.0, 1e-3, [](double) { return 1.0; }, [](double) { return 0.3; });
    for (double w : {0.1, 0.5, 1.0}) {
      CAPTURE(w);
      CHECK(identify_dispersion_window(s, 1.5, w).A(0, 0) == doctest::Approx(1.0 / (2.0 * w)));
    }
  }
  SUBCASE("b = t over [0, 1] gives 1") {
    const auto s = scalar_stats(1.0, 1e-3, [](double) { return 1.0; }, [](double t) { return t; });
    CHECK(identify_dispersion_window(s, 1.0, 1.0).A(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("windows below the minimum are rejected") {
    const auto s = scalar_stats(1.0, 1e-3, [](double) { return 1.0; }, [](double) { return 1.0; });
    CHECK_THROWS_AS(identify_dispersion_window(s, 0.5, 1e-12), InputError);
    CHECK_THROWS_AS(identify_dispersion_window(s, 0.5, 0.6), InputError);
  }
}

TEST_CASE("closed-loop operator is b r^-1") {
  const auto s = scalar_stats(1.0, 1e-2, [](double t) { return 1.0 + t; }, [](double) { return 0.5; });
  CHECK(identify_closed_loop(s, 1.0).A(0, 0) == doctest::Approx(0.25));
}

TEST_CASE("constraint") {
  SUBCASE("consistent moment pair has zero residual") {
    Matrix m(2, 2);
    m << 0.4, 0.1, 0.1, 0.3;
    const auto c = check_constraint(m, -2.0 * m);
    CHECK(c.residual == doctest::Approx(0.0));
    CHECK(c.relative() == doctest::Approx(0.0));
  }
  SUBCASE("inconsistent pair is reported") {
    const auto c = check_constraint(Matrix::Identity(1, 1), Matrix::Zero(1, 1));
    CHECK(c.residual == doctest::Approx(2.0));
  }
  SUBCASE("binding window for constant b") {
    const auto s = scalar_stats(2.0, 1e-3, [](double) { return 0.6; }, [](double) { return 0.5; });
    CHECK(constraint_window(s, 1.5) == doctest::Approx(0.6).epsilon(1e-9));
    // with X = −½r⁻¹x the constraint holds exactly at that window
    CHECK(check_constraint(s, 1.5, 0.6).relative() < 1e-9);
  }
  SUBCASE("no root inside the grid") {
    const auto s = scalar_stats(1.0, 1e-3, [](double) { return 100.0; }, [](double) { return 0.5; });
    CHECK_THROWS_AS(constraint_window(s, 0.5), NoRootError);
  }
}

TEST_CASE("eigenvalue propagation matches eigen_step per mode") {
  Matrix A = Vector::Map(std::vector<double>{-1.0, -0.4, 0.3}.data(), 3).asDiagonal();
  const auto prop = propagate_eigenvalues(A, 0.7);
  for (int i = 0; i < 3; ++i) {
    CHECK(prop(i).imag() == doctest::Approx(0.0));
    CHECK(std::abs(prop(i).real() - eigen_step(A(i, i), 0.7)) < 1e-12);
  }
  CHECK_THROWS_AS(propagate_eigenvalues(Matrix::Constant(1, 1, 1.0), kLn2), SingularRenovationError);
}

TEST_CASE("property: covariance ratio recovers random exponential rates") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> rate(-2.0, 2.0), at(0.2, 0.9);
  for (int trial = 0; trial < 50; ++trial) {
    const double lam = rate(gen);
    const auto s = scalar_stats(1.0, 1e-3, [lam](double t) { return std::exp(2 * lam * t); },
                                [](double) { return 1.0; });
    CHECK(identify_covariance_ratio(s, at(gen)).A(0, 0) == doctest::Approx(lam).epsilon(1e-4));
  }
}
