#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "monofcw/geometry.hpp"

namespace monofcw {

// Expected vehicle window size at a given distance.
struct SizeAnchor {
  double d = 0.0;  // [m]
  double w = 0.0;  // window width [px]
  double h = 0.0;  // window height [px]
};

// Anchors from field statistics with a wide-angle drive recorder:
// (5 m, 400x275), (10 m, 110x95), (20 m, 50x45).
std::vector<SizeAnchor> default_anchors();

// Window size at distance d: log-log piecewise-linear interpolation between
// bracketing anchors, strict 1/d extrapolation beyond the anchor range.
// Throws no_anchors on an empty anchor set.
std::pair<double, double> interpolate_size(std::span<const SizeAnchor> anchors,
                                           double d);

// One distance bin of the sliding-window schedule. v_anchor is the row of
// the window BOTTOM edge (vehicle-ground contact), v_tol the half-height of
// the vertical search band around it.
struct WindowBand {
  double d = 0.0;
  double v_anchor = 0.0;
  double v_tol = 0.0;
  int w = 0;
  int h = 0;
  int x_stride = 0;
  int v_stride = 0;
};

struct WindowPlan {
  std::vector<WindowBand> bands;  // ascending d, non-increasing size
  CameraParams params;
};

struct PlanOptions {
  double d_min = 5.0;
  double d_max = 40.0;
  int bins_per_octave = 4;
  double v_tol_frac = 0.25;   // vertical band half-height, fraction of h
  double stride_frac = 0.125;  // strides, fraction of w resp. h
};

// Builds the distance-indexed window schedule: bin centers geometrically
// spaced (bins_per_octave per factor 2 of distance), one band per bin.
// Bands that cannot place any window inside the image are dropped; throws
// empty_plan if none survive.
WindowPlan plan_windows(const CameraParams& params,
                        std::span<const SizeAnchor> anchors,
                        const PlanOptions& options = {});

// Full-image multi-scale baseline over the same anchor curve: every band
// scans all rows, at scales_per_octave sizes per factor 2 of distance.
// This is the schedule the distance prior replaces; kept as the reference
// for efficiency and soundness comparisons.
WindowPlan exhaustive_plan(const CameraParams& params,
                           std::span<const SizeAnchor> anchors,
                           double d_min, double d_max,
                           int scales_per_octave = 8, double stride_frac = 0.125);

struct WindowRect {
  int x = 0;
  int y = 0;  // top edge
  int w = 0;
  int h = 0;
  int band = 0;  // index into plan.bands
};

// Deterministic window order: band index, then y, then x. All returned
// windows lie fully inside the image.
std::vector<WindowRect> enumerate_windows(const WindowPlan& plan);

// Number of windows enumerate_windows would return, without materializing.
std::size_t count_windows(const WindowPlan& plan);

}  // namespace monofcw
