#include "ipf/control.hpp"

#include <algorithm>
#include <sstream>

#include "ipf/roots.hpp"

namespace ipf {

StartingControl starting_control(const EnsembleStats& stats, double at) {
  if (stats.b.size() != stats.grid.size()) throw InputError("starting_control: stats carry no b");
  const Matrix r = stats.interpolate(stats.r, at);
  const Matrix b = stats.interpolate(stats.b, at);
  const Matrix br_inv = b * guarded_inverse(r, "starting_control: r");
  StartingControl sc;
  sc.v = -2.0 * stats.interpolate_mean(at);
  sc.u = br_inv * sc.v;
  sc.x_start = r.diagonal().cwiseAbs().cwiseSqrt();
  sc.A = br_inv;
  return sc;
}

NeedleEvent needle_control(const Vector& x_minus, const Vector& x_plus, double tau) {
  if (x_minus.size() != x_plus.size()) throw InputError("needle_control: state sizes differ");
  NeedleEvent ev;
  ev.tau = tau;
  ev.v_minus = step_control(x_minus);
  ev.v_plus = step_control(x_plus);
  ev.delta_v = ev.v_plus - ev.v_minus;
  return ev;
}

DpDetection detect_dp(const std::vector<ModeTrace>& modes, const std::vector<double>& grid,
                      double tolerance) {
  if (grid.size() < 2) throw InputError("detect_dp: grid needs at least two points");
  DpDetection out;
  const auto speed = [&](int i, double t) { return std::abs(modes[i].x_dot(t) / modes[i].x(t)); };

  for (int i = 0; i < static_cast<int>(modes.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(modes.size()); ++j) {
      auto gap = [&](double t) { return speed(i, t) - speed(j, t); };

      bool identical = true;
      for (double t : grid) {
        const double si = speed(i, t), sj = speed(j, t);
        if (!(std::abs(si - sj) <= tolerance * std::max({1.0, si, sj}))) {
          identical = false;
          break;
        }
      }
      if (identical) {
        out.moments.push_back({grid.front(), i, j});
        continue;
      }

      for (std::size_t k = 1; k < grid.size(); ++k) {
        const double lo = grid[k - 1], hi = grid[k];
        const double glo = gap(lo), ghi = gap(hi);
        if (!std::isfinite(glo) || !std::isfinite(ghi)) continue;
        if (glo != 0.0 && (glo > 0.0) == (ghi > 0.0)) continue;
        if (ghi == 0.0 && k + 1 < grid.size()) continue;  // reported by the next cell
        const bool vanishes = [&] {
          for (int m : {i, j}) {
            const double a = modes[m].x(lo), b = modes[m].x(hi);
            if (a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0)) return true;
          }
          return false;
        }();
        if (vanishes) {
          std::ostringstream os;
          os << "detect_dp: modes (" << i << "," << j << ") bracket [" << lo << ", " << hi
             << "] contains a zero state; skipped";
          out.warnings.push_back(os.str());
          continue;
        }
        const auto root = roots::bisect(gap, lo, hi, tolerance * 1e-3, tolerance);
        if (root) out.moments.push_back({*root, i, j});
      }
    }
  }
  std::stable_sort(out.moments.begin(), out.moments.end(), [](const DpMoment& a, const DpMoment& b) {
    if (a.tau != b.tau) return a.tau < b.tau;
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  return out;
}

SegmentSchedule schedule_from_chain(const EigenChain& chain, const Vector& z0) {
  const auto states = propagate_states(chain, z0);
  const auto tau = chain.switch_moments();
  SegmentSchedule sched;
  sched.dps = tau;
  double start = 0.0;
  for (std::size_t k = 0; k < chain.intervals.size(); ++k) {
    Segment seg;
    seg.start = start;
    seg.end = tau[k];
    seg.eigenvalues = -chain.lambdas[k].cwiseAbs();
    seg.start_state = states[k];
    seg.control = step_control(states[k]);
    sched.segments.push_back(seg);
    // the control held over the segment memorized x(start); at τ_k it jumps to −2x(τ_k).
    // The last DP keeps the positive renovated eigenvalue so the terminal segment can zero the state.
    const bool last = k + 1 == chain.intervals.size() && chain.terminal > 0.0;
    if (!last) sched.needle_events.push_back(needle_control(states[k], states[k + 1], tau[k]));
    start = tau[k];
  }
  if (chain.terminal > 0.0) {
    Segment seg;
    seg.start = start;
    seg.end = start + chain.terminal;
    seg.eigenvalues = chain.lambdas.back();
    seg.start_state = states[chain.intervals.size()];
    seg.control = step_control(seg.start_state);
    sched.segments.push_back(seg);
  }
  return sched;
}

SegmentSchedule schedule_from_invariant(const Vector& lambdas, double ao_abs, double x0) {
  if (!(ao_abs > 0.0)) throw InputError("schedule_from_invariant: a_o must be positive");
  SegmentSchedule sched;
  double t = 0.0;
  double x = x0;
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    if (lambdas(k) == 0.0) throw InputError("schedule_from_invariant: zero eigenvalue");
    Segment seg;
    seg.start = t;
    seg.end = t + ao_abs / std::abs(lambdas(k));
    seg.eigenvalues = Vector::Constant(1, lambdas(k));
    seg.start_state = Vector::Constant(1, x);
    seg.control = step_control(seg.start_state);
    const double x_end = state_step(x, lambdas(k), seg.end - seg.start);
    sched.segments.push_back(seg);
    t = seg.end;
    if (k + 1 < lambdas.size()) {
      sched.dps.push_back(t);
      sched.needle_events.push_back(needle_control(seg.start_state, Vector::Constant(1, x_end), t));
    }
    x = x_end;
  }
  return sched;
}

}  // namespace ipf
