#pragma once

#include <vector>

#include "monofcw/image.hpp"

namespace monofcw {

struct ChannelConfig {
  int shrink = 4;              // cell size [px]
  int num_orientations = 6;    // histogram bins over [0, pi)
  bool normalize_gradient = true;
  double grad_norm_const = 0.005;
  int grad_norm_radius = 5;    // triangle-filter radius for the norm estimate
  int smooth_radius = 1;       // post-aggregation smoothing; 0 disables
};

// Aggregated feature channels of one image: 3 color planes (LUV scaled to
// [0,1]), gradient magnitude, and num_orientations soft-binned orientation
// planes. Values are sum-pooled over shrink x shrink cells.
struct ChannelStack {
  int width = 0;   // cells
  int height = 0;  // cells
  int shrink = 4;
  int num_orientations = 6;
  std::vector<float> data;  // plane-major [channel][y][x]

  int channels() const { return 3 + 1 + num_orientations; }

  float at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float& at(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
};

// Computes the channel stack of an 8-bit RGB image. Deterministic; output
// dims are floor(H/shrink) x floor(W/shrink). Throws image_too_small when
// either input dimension is below shrink.
ChannelStack compute_channels(const Image8& image, const ChannelConfig& config = {});

// Separable triangle filter with replicated borders, in place.
// Radius 1 is the [1 2 1]/4 kernel.
void triangle_smooth(std::vector<float>& plane, int width, int height, int radius);

}  // namespace monofcw
