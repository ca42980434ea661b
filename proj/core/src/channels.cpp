#include "monofcw/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "monofcw/error.hpp"

namespace monofcw {

namespace {

// CIELUV from linear RGB (D65 white), scaled into [0,1] per plane.
void rgb_to_luv(double r, double g, double b, float& l_out, float& u_out,
                float& v_out) {
  const double x = 0.412453 * r + 0.357580 * g + 0.180423 * b;
  const double y = 0.212671 * r + 0.715160 * g + 0.072169 * b;
  const double z = 0.019334 * r + 0.119193 * g + 0.950227 * b;

  const double l = y > 0.008856 ? 116.0 * std::cbrt(y) - 16.0 : 903.296296 * y;
  const double den = x + 15.0 * y + 3.0 * z;
  const double up = den > 0.0 ? 4.0 * x / den : 0.0;
  const double vp = den > 0.0 ? 9.0 * y / den : 0.0;
  const double u = 13.0 * l * (up - 0.197833);
  const double v = 13.0 * l * (vp - 0.468331);

  l_out = static_cast<float>(std::clamp(l / 100.0, 0.0, 1.0));
  u_out = static_cast<float>(std::clamp((u + 88.0) / 270.0, 0.0, 1.0));
  v_out = static_cast<float>(std::clamp((v + 134.0) / 270.0, 0.0, 1.0));
}

// Central differences, one-sided at the borders.
inline void gradient_at(const std::vector<float>& p, int w, int h, int x, int y,
                        double& gx, double& gy) {
  const auto v = [&](int xx, int yy) {
    return static_cast<double>(p[static_cast<std::size_t>(yy) * w + xx]);
  };
  gx = x == 0       ? v(1, y) - v(0, y)
       : x == w - 1 ? v(w - 1, y) - v(w - 2, y)
                    : 0.5 * (v(x + 1, y) - v(x - 1, y));
  gy = y == 0       ? v(x, 1) - v(x, 0)
       : y == h - 1 ? v(x, h - 1) - v(x, h - 2)
                    : 0.5 * (v(x, y + 1) - v(x, y - 1));
}

}  // namespace

void triangle_smooth(std::vector<float>& plane, int width, int height, int radius) {
  if (radius <= 0) return;
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = radius + 1 - std::abs(i);
    ksum += kernel[i + radius];
  }
  for (double& k : kernel) k /= ksum;

  std::vector<float> tmp(plane.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int xx = std::clamp(x + i, 0, width - 1);
        acc += kernel[i + radius] * plane[static_cast<std::size_t>(y) * width + xx];
      }
      tmp[static_cast<std::size_t>(y) * width + x] = static_cast<float>(acc);
    }
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = std::clamp(y + i, 0, height - 1);
        acc += kernel[i + radius] * tmp[static_cast<std::size_t>(yy) * width + x];
      }
      plane[static_cast<std::size_t>(y) * width + x] = static_cast<float>(acc);
    }
  }
}

ChannelStack compute_channels(const Image8& image, const ChannelConfig& config) {
  const int w = image.width;
  const int h = image.height;
  if (config.shrink < 1 || config.num_orientations < 1) {
    raise(errc::invalid_argument, "channel config out of range");
  }
  if (w < config.shrink || h < config.shrink) {
    raise(errc::image_too_small, "image smaller than one cell");
  }

  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<std::vector<float>> luv(3, std::vector<float>(n));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t* px = image.pixel(x, y);
      rgb_to_luv(px[0] / 255.0, px[1] / 255.0, px[2] / 255.0,
                 luv[0][y * static_cast<std::size_t>(w) + x],
                 luv[1][y * static_cast<std::size_t>(w) + x],
                 luv[2][y * static_cast<std::size_t>(w) + x]);
    }
  }

  // Per-pixel gradient: strongest response across the LUV planes.
  std::vector<float> mag(n), orient(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double best_m2 = -1.0, best_gx = 0.0, best_gy = 0.0;
      for (int c = 0; c < 3; ++c) {
        double gx, gy;
        gradient_at(luv[c], w, h, x, y, gx, gy);
        const double m2 = gx * gx + gy * gy;
        if (m2 > best_m2) {
          best_m2 = m2;
          best_gx = gx;
          best_gy = gy;
        }
      }
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      mag[i] = static_cast<float>(std::sqrt(best_m2));
      double theta = std::atan2(best_gy, best_gx);  // orientation of the gradient
      if (theta < 0.0) theta += std::numbers::pi;
      if (theta >= std::numbers::pi) theta -= std::numbers::pi;
      orient[i] = static_cast<float>(theta);
    }
  }

  if (config.normalize_gradient) {
    std::vector<float> smooth = mag;
    triangle_smooth(smooth, w, h, config.grad_norm_radius);
    for (std::size_t i = 0; i < n; ++i) {
      mag[i] = static_cast<float>(mag[i] / (smooth[i] + config.grad_norm_const));
    }
  }

  // Soft orientation binning splits each pixel's magnitude between the two
  // nearest bins, so the bins sum back to the magnitude exactly.
  const int nb = config.num_orientations;
  std::vector<std::vector<float>> bins(nb, std::vector<float>(n, 0.0f));
  for (std::size_t i = 0; i < n; ++i) {
    const double o = orient[i] * nb / std::numbers::pi;
    int b0 = static_cast<int>(o);
    if (b0 >= nb) b0 = nb - 1;
    const double f = o - b0;
    bins[b0][i] += static_cast<float>(mag[i] * (1.0 - f));
    bins[(b0 + 1) % nb][i] += static_cast<float>(mag[i] * f);
  }

  ChannelStack stack;
  stack.shrink = config.shrink;
  stack.num_orientations = nb;
  stack.width = w / config.shrink;
  stack.height = h / config.shrink;
  stack.data.assign(static_cast<std::size_t>(stack.channels()) * stack.width * stack.height,
                    0.0f);

  const auto pool = [&](const std::vector<float>& plane, int channel) {
    for (int cy = 0; cy < stack.height; ++cy) {
      for (int cx = 0; cx < stack.width; ++cx) {
        double acc = 0.0;
        for (int dy = 0; dy < config.shrink; ++dy) {
          const std::size_t row =
              static_cast<std::size_t>(cy * config.shrink + dy) * w + cx * config.shrink;
          for (int dx = 0; dx < config.shrink; ++dx) acc += plane[row + dx];
        }
        stack.at(channel, cy, cx) = static_cast<float>(acc);
      }
    }
  };

  pool(luv[0], 0);
  pool(luv[1], 1);
  pool(luv[2], 2);
  pool(mag, 3);
  for (int b = 0; b < nb; ++b) pool(bins[b], 4 + b);

  if (config.smooth_radius > 0) {
    std::vector<float> plane(static_cast<std::size_t>(stack.width) * stack.height);
    for (int c = 0; c < stack.channels(); ++c) {
      std::copy_n(stack.data.begin() + static_cast<std::size_t>(c) * plane.size(),
                  plane.size(), plane.begin());
      triangle_smooth(plane, stack.width, stack.height, config.smooth_radius);
      std::copy_n(plane.begin(), plane.size(),
                  stack.data.begin() + static_cast<std::size_t>(c) * plane.size());
    }
  }
  return stack;
}

}  // namespace monofcw
