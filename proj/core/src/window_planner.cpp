#include "monofcw/window_planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monofcw/error.hpp"

namespace monofcw {

namespace {

void require_anchors(std::span<const SizeAnchor> anchors) {
  if (anchors.empty()) {
    raise(errc::no_anchors, "size anchor set is empty");
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const auto& a = anchors[i];
    if (!(a.d > 0.0) || !(a.w > 0.0) || !(a.h > 0.0)) {
      raise(errc::invalid_argument, "size anchors must be positive");
    }
    if (i > 0) {
      if (!(a.d > anchors[i - 1].d)) {
        raise(errc::invalid_argument, "anchor distances must be strictly increasing");
      }
      if (a.w > anchors[i - 1].w || a.h > anchors[i - 1].h) {
        raise(errc::invalid_argument, "anchor sizes must not grow with distance");
      }
    }
  }
}

// Geometric bin centers covering [d_min, d_max] at bins_per_octave per
// factor 2 of distance.
std::vector<double> distance_bins(double d_min, double d_max, int bins_per_octave) {
  std::vector<double> bins;
  const double step = std::pow(2.0, 1.0 / bins_per_octave);
  double d = d_min;
  for (int k = 0; d <= d_max * (1.0 + 1e-12); ++k) {
    bins.push_back(d);
    d = d_min * std::pow(step, k + 1);
  }
  return bins;
}

int round_px(double v) { return static_cast<int>(std::lround(v)); }

// Bottom-edge row range of windows the band can place inside the image,
// empty when the band falls wholly outside.
bool band_bottom_range(const WindowBand& band, int image_w, int image_h,
                       double& lo, double& hi) {
  if (band.w > image_w || band.h > image_h) return false;
  lo = std::max(band.v_anchor - band.v_tol, static_cast<double>(band.h));
  hi = std::min(band.v_anchor + band.v_tol, static_cast<double>(image_h));
  return lo <= hi;
}

}  // namespace

std::vector<SizeAnchor> default_anchors() {
  return {{5.0, 400.0, 275.0}, {10.0, 110.0, 95.0}, {20.0, 50.0, 45.0}};
}

std::pair<double, double> interpolate_size(std::span<const SizeAnchor> anchors,
                                           double d) {
  require_anchors(anchors);
  if (!(d > 0.0) || !std::isfinite(d)) {
    raise(errc::invalid_argument, "distance must be positive and finite");
  }
  const SizeAnchor& first = anchors.front();
  const SizeAnchor& last = anchors.back();
  if (d <= first.d) {
    const double s = first.d / d;  // 1/d extrapolation
    return {first.w * s, first.h * s};
  }
  if (d >= last.d) {
    const double s = last.d / d;
    return {last.w * s, last.h * s};
  }
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const SizeAnchor& a = anchors[i];
    const SizeAnchor& b = anchors[i + 1];
    if (d >= a.d && d <= b.d) {
      const double t = (std::log(d) - std::log(a.d)) / (std::log(b.d) - std::log(a.d));
      return {std::exp(std::lerp(std::log(a.w), std::log(b.w), t)),
              std::exp(std::lerp(std::log(a.h), std::log(b.h), t))};
    }
  }
  raise(errc::invalid_argument, "unreachable: anchor bracket not found");
}

WindowPlan plan_windows(const CameraParams& params,
                        std::span<const SizeAnchor> anchors,
                        const PlanOptions& options) {
  require_valid(params);
  require_anchors(anchors);
  if (params.image_w <= 0 || params.image_h <= 0) {
    raise(errc::invalid_argument, "camera params carry no image dimensions");
  }
  if (!(options.d_min > 0.0) || !(options.d_max >= options.d_min)) {
    raise(errc::invalid_argument, "need 0 < d_min <= d_max");
  }
  if (options.bins_per_octave < 1 || !(options.stride_frac > 0.0) ||
      options.stride_frac > 1.0 || options.v_tol_frac < 0.0 || options.v_tol_frac > 1.0) {
    raise(errc::invalid_argument, "plan fractions out of range");
  }

  WindowPlan plan;
  plan.params = params;
  for (double d : distance_bins(options.d_min, options.d_max, options.bins_per_octave)) {
    const auto [w, h] = interpolate_size(anchors, d);
    WindowBand band;
    band.d = d;
    band.v_anchor = row_from_distance(params, d);
    band.w = std::max(1, round_px(w));
    band.h = std::max(1, round_px(h));
    band.v_tol = options.v_tol_frac * band.h;
    band.x_stride = std::max(1, round_px(options.stride_frac * band.w));
    band.v_stride = std::max(1, round_px(options.stride_frac * band.h));
    double lo, hi;
    if (band_bottom_range(band, params.image_w, params.image_h, lo, hi)) {
      plan.bands.push_back(band);
    }
  }
  if (plan.bands.empty()) {
    raise(errc::empty_plan, "every band falls outside the image");
  }
  return plan;
}

WindowPlan exhaustive_plan(const CameraParams& params,
                           std::span<const SizeAnchor> anchors,
                           double d_min, double d_max,
                           int scales_per_octave, double stride_frac) {
  require_valid(params);
  require_anchors(anchors);
  if (params.image_w <= 0 || params.image_h <= 0) {
    raise(errc::invalid_argument, "camera params carry no image dimensions");
  }
  if (!(d_min > 0.0) || !(d_max >= d_min) || scales_per_octave < 1 ||
      !(stride_frac > 0.0) || stride_frac > 1.0) {
    raise(errc::invalid_argument, "exhaustive plan options out of range");
  }

  WindowPlan plan;
  plan.params = params;
  for (double d : distance_bins(d_min, d_max, scales_per_octave)) {
    const auto [w, h] = interpolate_size(anchors, d);
    WindowBand band;
    band.d = d;
    band.w = std::max(1, round_px(w));
    band.h = std::max(1, round_px(h));
    if (band.w > params.image_w || band.h > params.image_h) continue;
    // Full-image vertical coverage for the bottom edge.
    band.v_anchor = 0.5 * (band.h + params.image_h);
    band.v_tol = 0.5 * (params.image_h - band.h);
    band.x_stride = std::max(1, round_px(stride_frac * band.w));
    band.v_stride = std::max(1, round_px(stride_frac * band.h));
    plan.bands.push_back(band);
  }
  if (plan.bands.empty()) {
    raise(errc::empty_plan, "no scale fits inside the image");
  }
  return plan;
}

std::vector<WindowRect> enumerate_windows(const WindowPlan& plan) {
  std::vector<WindowRect> windows;
  windows.reserve(count_windows(plan));
  const int image_w = plan.params.image_w;
  const int image_h = plan.params.image_h;
  for (std::size_t b = 0; b < plan.bands.size(); ++b) {
    const WindowBand& band = plan.bands[b];
    double lo, hi;
    if (!band_bottom_range(band, image_w, image_h, lo, hi)) continue;
    const int steps = static_cast<int>(std::floor((hi - lo) / band.v_stride));
    for (int j = 0; j <= steps; ++j) {
      const int y = round_px(lo + j * band.v_stride) - band.h;
      for (int x = 0; x + band.w <= image_w; x += band.x_stride) {
        windows.push_back({x, y, band.w, band.h, static_cast<int>(b)});
      }
    }
  }
  return windows;
}

std::size_t count_windows(const WindowPlan& plan) {
  std::size_t total = 0;
  for (const WindowBand& band : plan.bands) {
    double lo, hi;
    if (!band_bottom_range(band, plan.params.image_w, plan.params.image_h, lo, hi)) {
      continue;
    }
    const std::size_t rows = static_cast<std::size_t>(std::floor((hi - lo) / band.v_stride)) + 1;
    if (band.w > plan.params.image_w) continue;
    const std::size_t cols =
        static_cast<std::size_t>((plan.params.image_w - band.w) / band.x_stride) + 1;
    total += rows * cols;
  }
  return total;
}

}  // namespace monofcw
