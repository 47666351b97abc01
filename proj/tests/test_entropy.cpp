#include <doctest.h>

#include <cmath>

#include "ipf/entropy.hpp"
#include "oracles.hpp"

using namespace ipf;

namespace {

SimulationOptions opts(std::int64_t paths, std::uint64_t seed, double dt = 0.0) {
  SimulationOptions o;
  o.n_paths = paths;
  o.seed = seed;
  o.dt = dt;
  return o;
}

DiffusionModel u1_model(double sigma = 1.0) {
  return linear_model(Matrix::Zero(1, 1), Matrix::Constant(1, 1, sigma), Matrix::Ones(1, 1), Vector::Ones(1),
                      Matrix::Zero(1, 1), 0.0, 1.0);
}

// Analytic r(t) = 1.5e^{2t} − 0.5 on a grid, with b = ½.
EnsembleStats analytic_u1_stats(double h) {
  EnsembleStats s;
  s.grid = make_grid(0.0, 1.0, h);
  for (double t : s.grid) {
    s.r.push_back(Matrix::Constant(1, 1, 1.5 * std::exp(2 * t) - 0.5));
    s.mean.push_back(Vector::Constant(1, std::exp(t)));
    s.b.push_back(Matrix::Constant(1, 1, 0.5));
  }
  return s;
}

const OperatorTrace unit = [](double) { return Matrix::Ones(1, 1); };

}  // namespace

TEST_CASE("zero drift has zero entropy") {
  const auto model = ornstein_uhlenbeck(0.0, 1.0, 1.0, 0.0, 0.0, 1.0);
  const auto e = entropy_mc(model, opts(500, 1));
  CHECK(e.value == 0.0);
  CHECK(e.std_error.value() == 0.0);
}

TEST_CASE("Monte Carlo agrees with the closed form on the u = 1 example") {
  const auto mc = entropy_mc(u1_model(), opts(20000, 17, 1e-3));
  REQUIRE(mc.std_error);
  CHECK(std::abs(mc.value - oracle::entropy_u1) <= 3.0 * *mc.std_error + 5e-3);  // 5e-3: Euler bias at dt = 1e-3
  CHECK(mc.value >= 0.0);
}

TEST_CASE("covariance form quadrature") {
  SUBCASE("analytic r") {
    const auto e = entropy_covariance_form(unit, analytic_u1_stats(1e-4));
    CHECK(e.value == doctest::Approx(oracle::entropy_u1).epsilon(1e-7));
    CHECK(e.method == EntropyMethod::CovarianceForm);
  }
  SUBCASE("u = 0") {
    const auto e = entropy_covariance_form([](double) { return Matrix::Zero(1, 1); }, analytic_u1_stats(1e-2));
    CHECK(e.value == 0.0);
  }
  SUBCASE("constant r on [0, 2]") {
    EnsembleStats s;
    s.grid = make_grid(0.0, 2.0, 0.1);
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
      s.r.push_back(Matrix::Ones(1, 1));
      s.mean.push_back(Vector::Zero(1));
    }
    const auto e = entropy_covariance_form(unit, [](double) { return Matrix::Ones(1, 1); }, s);
    CHECK(e.value == doctest::Approx(1.0));
  }
  SUBCASE("degenerate diffusion") {
    CHECK_THROWS_AS(entropy_covariance_form(unit, [](double) { return Matrix::Zero(1, 1); }, analytic_u1_stats(0.1)),
                    DegenerateFunctionalError);
  }
}

TEST_CASE("doubling sigma divides the value by four") {
  const auto base = entropy_covariance_form(unit, [](double) { return Matrix::Ones(1, 1); }, analytic_u1_stats(1e-3));
  const auto twice =
      entropy_covariance_form(unit, [](double) { return Matrix::Constant(1, 1, 2.0); }, analytic_u1_stats(1e-3));
  CHECK(twice.value == doctest::Approx(base.value / 4.0));
}

TEST_CASE("additivity in time") {
  const auto stats = analytic_u1_stats(1e-3);
  auto slice = [&](double a, double b) {
    EnsembleStats s;
    for (std::size_t k = 0; k < stats.size(); ++k) {
      if (stats.grid[k] >= a - 1e-12 && stats.grid[k] <= b + 1e-12) {
        s.grid.push_back(stats.grid[k]);
        s.r.push_back(stats.r[k]);
        s.mean.push_back(stats.mean[k]);
        s.b.push_back(stats.b[k]);
      }
    }
    return entropy_covariance_form(unit, s).value;
  };
  CHECK(slice(0.0, 1.0) == doctest::Approx(slice(0.0, 0.4) + slice(0.4, 1.0)).epsilon(1e-12));
}

TEST_CASE("singular diffusion is refused by the Monte Carlo estimator") {
  const auto model = u1_model(0.0);
  CHECK_THROWS_AS(entropy_mc(model, opts(10, 1)), SingularDiffusionError);
}

TEST_CASE("companion cross-check uses the zero-drift rate") {
  const auto companion =
      covariance_derivative(simulate_ensemble(ornstein_uhlenbeck(0.0, 1.0, 0.0, 0.0, 0.0, 1.0), opts(20000, 5, 1e-2)));
  auto stats = analytic_u1_stats(1e-2);
  const auto direct = entropy_covariance_form(unit, stats);
  const auto cross = entropy_covariance_form_companion(unit, stats, companion);
  CHECK(cross.value == doctest::Approx(direct.value).epsilon(0.1));
}
