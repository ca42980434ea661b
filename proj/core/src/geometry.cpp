#include "monofcw/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "monofcw/error.hpp"

namespace monofcw {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

bool CameraParams::valid() const noexcept {
  return std::isfinite(h) && h > 0.0 && std::isfinite(alpha) &&
         std::fabs(alpha) < kHalfPi && std::isfinite(f_y) && f_y > 0.0 &&
         std::isfinite(v0);
}

void require_valid(const CameraParams& params) {
  if (!params.valid()) {
    raise(errc::invalid_argument,
          "camera parameters out of range (need h > 0, f_y > 0, |alpha| < pi/2)");
  }
}

double horizon_row(const CameraParams& params) {
  require_valid(params);
  return params.v0 - params.f_y * std::tan(params.alpha);
}

double distance_from_row(const CameraParams& params, double v) {
  require_valid(params);
  if (!std::isfinite(v)) {
    raise(errc::invalid_argument, "row is not finite");
  }
  const double theta = params.alpha + std::atan((v - params.v0) / params.f_y);
  if (theta <= 0.0) {
    raise(errc::at_or_above_horizon,
          "row " + std::to_string(v) + " maps to or above the horizon");
  }
  if (theta >= kHalfPi) {
    raise(errc::angle_overflow,
          "row " + std::to_string(v) + " maps below the camera foot");
  }
  return params.h / std::tan(theta);
}

double row_from_distance(const CameraParams& params, double d) {
  require_valid(params);
  if (!(d > 0.0) || !std::isfinite(d)) {
    raise(errc::invalid_argument, "distance must be positive and finite");
  }
  return params.v0 + params.f_y * std::tan(std::atan(params.h / d) - params.alpha);
}

}  // namespace monofcw
