#pragma once

#include <vector>

#include "monofcw/geometry.hpp"

namespace monofcw {

// One measured ground point: its true distance and the image row of its
// ground-contact pixel.
struct CalibrationPoint {
  double d = 0.0;  // [m], > 0
  double v = 0.0;  // [px]
};

enum class CalibrationMethod { three_point_exact, least_squares };

struct CalibrationReport {
  CameraParams params;
  std::vector<double> residuals;  // v_i - row_from_distance(params, d_i) [px]
  CalibrationMethod method = CalibrationMethod::three_point_exact;
  bool converged = true;  // false only for least_squares hitting max_iter
  int iterations = 0;
};

// Solves (alpha, f_y, v0) exactly from the measured camera height and three
// ground points. With t_i = h/d_i and a = tan(alpha), each row satisfies
// v_i = v0 + f_y*(t_i - a)/(1 + t_i*a), which makes a the root of a linear
// equation in the row differences; f_y and v0 then follow directly.
//
// Points are canonicalized by ascending distance first, so the result is
// exactly permutation invariant. Requires pairwise distinct distances and
// rows, ordered consistently (larger d, smaller v). The returned parameters
// always reproduce the three input rows to < 1e-6 px; a solution that fails
// this re-projection check is rejected as implausible_solution.
//
// image_w/image_h are carried through to the returned params untouched.
CalibrationReport solve_three_point(double h, const CalibrationPoint& p1,
                                    const CalibrationPoint& p2,
                                    const CalibrationPoint& p3,
                                    int image_w = 0, int image_h = 0);

// Gauss-Newton refinement of (alpha, f_y, v0) on row residuals for N >= 3
// points. Keeps the best (lowest sum-of-squares) iterate, so the final
// residual never exceeds the initial one. Terminates when the parameter
// step norm drops below tol; if max_iter is hit first, the report is
// returned with converged = false.
CalibrationReport refine_least_squares(double h,
                                       const std::vector<CalibrationPoint>& points,
                                       const CameraParams& init,
                                       int max_iter = 50, double tol = 1e-12);

}  // namespace monofcw
