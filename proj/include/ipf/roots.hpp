#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace ipf::roots {

struct Bracket {
  double lo;
  double hi;
};

/// Bisection on a sign-changing bracket. Stops when the bracket width drops
/// below `abs_tol + rel_tol * |mid|` or an exact zero is hit.
template <typename F>
std::optional<double> bisect(F&& f, double lo, double hi, double abs_tol = 1e-12,
                             double rel_tol = 0.0, int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0.0) == (fhi > 0.0)) {
    return std::nullopt;
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= abs_tol + rel_tol * std::abs(mid)) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Walks a uniform grid of `steps` cells from `from` towards `to` and returns
/// the first cell across which `f` changes sign. Cells where `f` is not finite
/// are skipped.
template <typename F>
std::optional<Bracket> first_sign_change(F&& f, double from, double to, int steps) {
  double prev_x = from;
  double prev_f = f(from);
  for (int i = 1; i <= steps; ++i) {
    const double x = from + (to - from) * static_cast<double>(i) / steps;
    const double fx = f(x);
    if (std::isfinite(prev_f) && std::isfinite(fx)) {
      if (prev_f == 0.0) return Bracket{std::min(prev_x, x), std::max(prev_x, x)};
      if ((prev_f > 0.0) != (fx > 0.0)) {
        return Bracket{std::min(prev_x, x), std::max(prev_x, x)};
      }
    }
    prev_x = x;
    prev_f = fx;
  }
  return std::nullopt;
}

/// Expands `[start, start*factor^k]` geometrically until `f` changes sign or
/// the upper end passes `limit`.
template <typename F>
std::optional<Bracket> expand_geometric(F&& f, double start, double limit, double factor = 2.0) {
  double lo = start;
  double flo = f(lo);
  if (!std::isfinite(flo)) return std::nullopt;
  while (lo < limit) {
    const double hi = std::min(lo * factor, limit);
    const double fhi = f(hi);
    if (!std::isfinite(fhi)) return std::nullopt;
    if (flo == 0.0 || (flo > 0.0) != (fhi > 0.0)) return Bracket{lo, hi};
    lo = hi;
    flo = fhi;
  }
  return std::nullopt;
}

}  // namespace ipf::roots
