#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qdyn/concurrence.hpp"
#include "qdyn/propagators.hpp"
#include "qdyn/types.hpp"

namespace qdyn {

enum class IntervalKind { Bright, Dark };

struct Interval {
  double t_start = 0.0;
  double t_end = 0.0;
  IntervalKind kind = IntervalKind::Bright;

  double length() const { return t_end - t_start; }
};

/// Alternating bright/dark tiling of [0, horizon]. esd_time is set exactly
/// when the final interval is dark and reaches the horizon; it marks where
/// that interval starts.
struct EntanglementTimeline {
  std::vector<Interval> intervals;
  std::optional<double> esd_time;
  double horizon = 0.0;
};

/// Default scan resolution: 4096 cells per 10 time units, scaled up
/// linearly once |v| exceeds 10 so the 2v oscillation keeps >= 25 samples
/// per period.
inline long default_grid_n(double horizon, double v) {
  const double n = 4096.0 * (horizon / 10.0) * std::max(1.0, std::abs(v) / 10.0);
  return std::max(1000L, static_cast<long>(std::ceil(n)));
}

namespace detail {

inline int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Per-side signs at a grid point. An exact zero is classified by probing
// 1e-6 to each side: matching side signs mean a tangential touch (which
// must not split an interval), differing signs mean the boundary sits
// exactly on the grid point.
struct GridSign {
  int left = 0;   // sign governing the cell that ends here
  int right = 0;  // sign governing the cell that starts here

  bool exact_boundary() const { return left * right < 0; }
};

inline GridSign classify_grid_point(const std::function<double(double)>& f,
                                    double t, double horizon) {
  const int s = sign_of(f(t));
  if (s != 0) return GridSign{s, s};
  constexpr double kProbe = 1e-6;
  int sl = sign_of(f(std::max(t - kProbe, 0.0)));
  int sr = sign_of(f(std::min(t + kProbe, horizon)));
  if (sl == 0) sl = sr != 0 ? sr : 1;
  if (sr == 0) sr = sl;
  return GridSign{sl, sr};
}

}  // namespace detail

/// Scans c_tilde on a uniform grid, refines every sign change by bisection
/// to |t| accuracy 1e-8 * horizon, and tiles the horizon with alternating
/// bright/dark intervals. After refining a boundary the flanking half-cells
/// are re-checked; a flank whose sign disagrees with its grid endpoint
/// means the cell hides more than one crossing and the scan is too coarse.
inline EntanglementTimeline extract_timeline(
    const std::function<double(double)>& c_tilde, double horizon,
    long grid_n) {
  if (!(horizon > 0.0)) throw ConfigError("extract_timeline: horizon <= 0");
  if (grid_n < 1000) throw ConfigError("extract_timeline: grid_n < 1000");

  const double h = horizon / static_cast<double>(grid_n);
  const double refine_width = 1e-8 * horizon;

  std::vector<detail::GridSign> signs(static_cast<std::size_t>(grid_n) + 1);
  for (long i = 0; i <= grid_n; ++i) {
    const double t = (i == grid_n) ? horizon : static_cast<double>(i) * h;
    signs[static_cast<std::size_t>(i)] =
        detail::classify_grid_point(c_tilde, t, horizon);
  }

  std::vector<double> boundaries;
  for (long i = 0; i < grid_n; ++i) {
    // A sign change sitting exactly on an interior grid point needs no
    // refinement.
    if (i > 0 && signs[static_cast<std::size_t>(i)].exact_boundary()) {
      boundaries.push_back(static_cast<double>(i) * h);
    }

    const int sa = signs[static_cast<std::size_t>(i)].right;
    const int sb = signs[static_cast<std::size_t>(i) + 1].left;
    if (sa * sb >= 0) continue;

    double a = static_cast<double>(i) * h;
    double b = (i + 1 == grid_n) ? horizon : static_cast<double>(i + 1) * h;
    const double cell_a = a;
    const double cell_b = b;
    while (b - a > refine_width) {
      const double m = 0.5 * (a + b);
      const int sm = detail::sign_of(c_tilde(m));
      if (sm == 0) {
        a = b = m;
        break;
      }
      (sm == sa ? a : b) = m;
    }
    const double root = 0.5 * (a + b);

    // Flank re-check: one crossing per cell means the sign is uniform on
    // each side of the root.
    const double left_mid = 0.5 * (cell_a + root);
    if (left_mid > cell_a && left_mid < root &&
        detail::sign_of(c_tilde(left_mid)) * sa < 0) {
      throw GridTooCoarseError("multiple sign changes inside one grid cell");
    }
    const double right_mid = 0.5 * (root + cell_b);
    if (right_mid > root && right_mid < cell_b &&
        detail::sign_of(c_tilde(right_mid)) * sb < 0) {
      throw GridTooCoarseError("multiple sign changes inside one grid cell");
    }
    boundaries.push_back(root);
  }

  EntanglementTimeline tl;
  tl.horizon = horizon;
  IntervalKind kind =
      signs.front().right > 0 ? IntervalKind::Bright : IntervalKind::Dark;
  double start = 0.0;
  for (double b : boundaries) {
    tl.intervals.push_back(Interval{start, b, kind});
    start = b;
    kind = kind == IntervalKind::Bright ? IntervalKind::Dark
                                        : IntervalKind::Bright;
  }
  tl.intervals.push_back(Interval{start, horizon, kind});
  if (tl.intervals.back().kind == IntervalKind::Dark) {
    tl.esd_time = tl.intervals.back().t_start;
  }
  return tl;
}

/// Fraction of the horizon spent disentangled.
inline double dark_fraction(const EntanglementTimeline& tl) {
  double dark = 0.0;
  for (const Interval& iv : tl.intervals) {
    if (iv.kind == IntervalKind::Dark) dark += iv.length();
  }
  return dark / tl.horizon;
}

/// Number of dark -> bright transitions.
inline int revival_count(const EntanglementTimeline& tl) {
  int count = 0;
  for (std::size_t i = 1; i < tl.intervals.size(); ++i) {
    if (tl.intervals[i - 1].kind == IntervalKind::Dark &&
        tl.intervals[i].kind == IntervalKind::Bright) {
      ++count;
    }
  }
  return count;
}

/// c_tilde(t) of the numerically propagated state. Grid-aligned queries are
/// served from a precomputed trajectory; refinement queries re-propagate
/// from t = 0 through the exact exponential instead of interpolating.
class NumericCtildeEvaluator {
 public:
  NumericCtildeEvaluator(const DensityMatrix& rho0, const ModelParams& params,
                         double horizon, long grid_n)
      : rho0_(rho0),
        liouvillian_(build_superoperator(params)),
        step_(horizon / static_cast<double>(grid_n)) {
    require_valid_state(rho0);
    cache_.reserve(static_cast<std::size_t>(grid_n) + 1);
    const Mat16 u = expm<Mat16>(liouvillian_.entries * Complex(step_, 0.0));
    Vec16 state = vec(rho0);
    cache_.push_back(c_tilde_of(rho0));
    for (long i = 1; i <= grid_n; ++i) {
      state = u * state;
      cache_.push_back(c_tilde_of(unvec(state)));
    }
  }

  double operator()(double t) const {
    const double idx = t / step_;
    const double nearest = std::round(idx);
    if (std::abs(idx - nearest) < 1e-9 && nearest >= 0.0 &&
        nearest < static_cast<double>(cache_.size())) {
      return cache_[static_cast<std::size_t>(nearest)];
    }
    return c_tilde_of(propagate_exp(rho0_, liouvillian_, t));
  }

 private:
  static double c_tilde_of(const DensityMatrix& rho) {
    return concurrence_x(project_to_x_form(rho).state).c_tilde;
  }

  DensityMatrix rho0_;
  Superoperator liouvillian_;
  double step_;
  std::vector<double> cache_;
};

}  // namespace qdyn
