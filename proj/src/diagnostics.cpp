#include "ipf/diagnostics.hpp"

#include <algorithm>
#include <sstream>

#include "ipf/eigenchain.hpp"

namespace ipf {

double lce_local(const std::vector<double>& t, const std::vector<double>& x, double x0) {
  if (t.size() != x.size() || t.size() < 2) throw InputError("lce_local: need at least two samples");
  if (x0 == 0.0) throw InputError("lce_local: reference start state is zero");
  if (!(t.back() > t.front())) throw InputError("lce_local: window must be positive");
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double ratio = x[k] / x0;
    if (!(ratio > 0.0)) {
      std::ostringstream os;
      os << "lce_local: x(t)/x0 = " << ratio << " at t = " << t[k];
      throw UndefinedLogError(os.str());
    }
    const double dt = t[k] - t.front();
    num += dt * std::log(ratio);
    den += dt * dt;
  }
  return num / den;
}

double lce_local(const std::function<double(double)>& trace, double t0, double window, int samples) {
  if (!(window > 0.0)) throw InputError("lce_local: window must be positive");
  if (samples < 2) throw InputError("lce_local: need at least two samples");
  std::vector<double> t(samples), x(samples);
  for (int k = 0; k < samples; ++k) {
    t[k] = t0 + window * k / (samples - 1);
    x[k] = trace(t[k]);
  }
  return lce_local(t, x, x[0]);
}

double pfr(const Matrix& A) {
  if (A.rows() != A.cols()) throw InputError("pfr: operator must be square");
  return A.trace();
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Instable: return "instable";
    case Stability::AsymptoticallyStable: return "asymptotically-stable";
    case Stability::Steady: return "steady";
  }
  return "unknown";
}

Stability classify(double sigma, double tol) {
  if (sigma > tol) return Stability::Instable;
  if (sigma < -tol) return Stability::AsymptoticallyStable;
  return Stability::Steady;
}

namespace {

Vector replay_exponents(const Vector& lambdas, double window) {
  Vector out(lambdas.size());
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    const double lam = lambdas(i);
    out(i) = lce_local([lam](double t) { return std::exp(lam * t); }, 0.0, window);
  }
  return out;
}

}  // namespace

DiagnosticsReport diagnose(const SegmentSchedule& schedule, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw InputError("diagnose: window fraction must lie in (0, 1]");
  }
  DiagnosticsReport rep;
  const auto& segs = schedule.segments;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Segment& seg = segs[k];
    const double len = seg.end - seg.start;
    if (!(len > 0.0)) throw InputError("diagnose: segment of non-positive length");
    SegmentDiagnostics sd;
    sd.start = seg.start;
    sd.end = seg.end;
    sd.lce = replay_exponents(seg.eigenvalues, window_fraction * len);
    sd.classification = classify(sd.lce.maxCoeff());
    rep.segments.push_back(sd);

    if (k + 1 == segs.size()) break;
    // eigenvalues reached at the end of this segment under its step control
    Vector renovated(seg.eigenvalues.size());
    try {
      for (Eigen::Index i = 0; i < renovated.size(); ++i) {
        renovated(i) = eigen_step(seg.eigenvalues(i), len);
      }
    } catch (const SingularRenovationError& e) {
      rep.warnings.push_back(std::string("diagnose: ") + e.what());
      continue;
    }
    const Segment& next = segs[k + 1];
    SignFlip sf;
    sf.tau = seg.end;
    for (const auto& ev : schedule.needle_events) {
      if (std::abs(ev.tau - seg.end) <= 1e-12 * std::max(1.0, std::abs(seg.end))) sf.needle = true;
    }
    sf.lce_before = replay_exponents(renovated, window_fraction * len);
    sf.lce_after = replay_exponents(next.eigenvalues, window_fraction * (next.end - next.start));
    sf.flipped = sf.lce_before.size() == sf.lce_after.size();
    for (Eigen::Index i = 0; sf.flipped && i < sf.lce_before.size(); ++i) {
      sf.flipped = sf.lce_before(i) * sf.lce_after(i) < 0.0;
    }
    sf.pfr = pfr(Matrix(renovated.asDiagonal()));
    sf.positive_sum = renovated.cwiseMax(0.0).sum();
    if (!(sf.pfr > 0.0)) {
      rep.warnings.push_back("diagnose: non-producing operator at tau = " + std::to_string(sf.tau));
    }
    rep.sign_flips.push_back(sf);
  }
  return rep;
}

}  // namespace ipf
