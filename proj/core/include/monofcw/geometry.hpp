#pragma once

namespace monofcw {

// Calibrated ground-plane camera model.
//
// Convention used throughout: image rows grow downward, and a ground point
// ahead of the camera images below the horizon row. Distances are measured
// along the ground from the vertical through the optical center.
struct CameraParams {
  double h = 0.0;      // camera height above ground [m], > 0
  double alpha = 0.0;  // downward pitch [rad], |alpha| < pi/2
  double f_y = 0.0;    // vertical focal ratio f/dy [px], > 0
  double v0 = 0.0;     // principal-point row [px]
  int image_w = 0;     // frame width [px]
  int image_h = 0;     // frame height [px]

  bool valid() const noexcept;
};

// Throws invalid_argument unless h > 0, f_y > 0, |alpha| < pi/2 and all
// fields are finite. Image dimensions are checked where they are used.
void require_valid(const CameraParams& params);

// Row where projected ground distance diverges: v0 - f_y * tan(alpha).
double horizon_row(const CameraParams& params);

// Ground distance of the point imaged at row v.
//
//   d(v) = h / tan(alpha + arctan((v - v0) / f_y))
//
// Strictly decreasing in v. Throws at_or_above_horizon when the composed
// angle is <= 0 and angle_overflow when it is >= pi/2.
double distance_from_row(const CameraParams& params, double v);

// Row at which a ground point at distance d > 0 images:
//
//   v(d) = v0 + f_y * tan(arctan(h / d) - alpha)
//
// Defined for any d > 0; the result may fall outside the image.
double row_from_distance(const CameraParams& params, double d);

}  // namespace monofcw
