#include "ipf/eigenchain.hpp"

#include <algorithm>
#include <sstream>

#include "ipf/roots.hpp"

namespace ipf {

std::vector<double> EigenChain::switch_moments() const {
  std::vector<double> tau;
  double acc = 0.0;
  for (double t : intervals) tau.push_back(acc += t);
  return tau;
}

double EigenChain::horizon() const {
  double acc = terminal;
  for (double t : intervals) acc += t;
  return acc;
}

namespace {

// log |eigen_step(−m, t)| for m > 0; finite for every t >= 0.
double log_decayed(double m, double t) {
  const double mt = m * t;
  return std::log(m) - mt - std::log(2.0 - std::exp(-mt));
}

}  // namespace

EigenChain build_equalization_chain(const Vector& spectrum, int n, const RenovationHook& hook) {
  if (n < 1 || spectrum.size() != n) throw InputError("build_equalization_chain: spectrum size must equal n");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(spectrum(i)) || spectrum(i) == 0.0) {
      throw InputError("build_equalization_chain: eigenvalues must be finite and nonzero");
    }
    if (i > 0 && !(std::abs(spectrum(i - 1)) > std::abs(spectrum(i)))) {
      throw InputError("build_equalization_chain: spectrum is not strictly ranged by magnitude");
    }
  }

  EigenChain chain;
  chain.n = n;
  chain.lambdas.push_back(-spectrum.cwiseAbs());
  if (n == 1) return chain;

  const double m_min = std::abs(spectrum(n - 1));
  for (int k = 1; k < n; ++k) {
    Vector start = chain.lambdas.back().cwiseAbs();
    if (hook) {
      for (int i = 0; i < n; ++i) start(i) = std::abs(hook(k, i, start(i)));
    }
    const double m_group = start(0);
    const double m_next = start(k);
    auto gap = [&](double t) { return log_decayed(m_group, t) - log_decayed(m_next, t); };

    const double eps = 1e-9 / start.maxCoeff();
    const double limit = 1e3 / std::min(m_min, start.minCoeff());
    const auto bracket = roots::expand_geometric(gap, eps, limit);
    if (!bracket) {
      std::ostringstream os;
      os << "build_equalization_chain: stage " << k << " has no equalization root up to t=" << limit;
      throw NoCooperationError(os.str());
    }
    const auto t = roots::bisect(gap, bracket->lo, bracket->hi, 0.0, 1e-15);
    if (!t) throw NoCooperationError("build_equalization_chain: bisection failed");

    Vector next(n);
    for (int i = 0; i < n; ++i) next(i) = eigen_step(-start(i), *t);
    chain.intervals.push_back(*t);
    chain.lambdas.push_back(next);
  }
  chain.terminal = terminal_time(0.0, chain.lambdas.back()(0));
  return chain;
}

std::vector<Vector> propagate_states(const EigenChain& chain, const Vector& z0) {
  if (z0.size() != chain.n) throw InputError("propagate_states: state size must equal chain dimension");
  std::vector<Vector> out{z0};
  Vector z = z0;
  for (std::size_t k = 0; k < chain.intervals.size(); ++k) {
    const Vector& lam = chain.lambdas[k];
    for (int i = 0; i < chain.n; ++i) z(i) = state_step(z(i), -std::abs(lam(i)), chain.intervals[k]);
    out.push_back(z);
  }
  if (chain.terminal > 0.0) {
    const Vector& lam = chain.lambdas.back();
    for (int i = 0; i < chain.n; ++i) z(i) = state_step(z(i), lam(i), chain.terminal);
    out.push_back(z);
  }
  return out;
}

double chain_equalization_residual(const EigenChain& chain) {
  double worst = 0.0;
  for (std::size_t k = 1; k < chain.lambdas.size(); ++k) {
    const Vector mags = chain.lambdas[k].head(static_cast<Eigen::Index>(k) + 1).cwiseAbs();
    worst = std::max(worst, (mags.maxCoeff() - mags.minCoeff()) / mags.maxCoeff());
  }
  return worst;
}

ChainRatios chain_ratios(const EigenChain& chain) {
  ChainRatios r;
  const auto tau = chain.switch_moments();
  for (std::size_t k = 1; k < chain.intervals.size(); ++k) {
    r.interval.push_back(chain.intervals[k] / chain.intervals[k - 1]);
    r.cumulative.push_back(tau[k] / tau[k - 1]);
  }
  return r;
}

}  // namespace ipf
