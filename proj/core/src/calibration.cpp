#include "monofcw/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "monofcw/error.hpp"

namespace monofcw {

namespace {

constexpr double kSingularEps = 1e-12;
constexpr double kReprojectTolPx = 1e-6;

std::vector<double> row_residuals(double h, const std::vector<CalibrationPoint>& points,
                                  const CameraParams& params) {
  std::vector<double> res;
  res.reserve(points.size());
  CameraParams p = params;
  p.h = h;
  for (const auto& pt : points) {
    res.push_back(pt.v - row_from_distance(p, pt.d));
  }
  return res;
}

double sum_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Solves the 3x3 system A x = b by Gaussian elimination with partial
// pivoting. Returns false if a pivot underflows.
bool solve3x3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
              std::array<double, 3>& x) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

}  // namespace

CalibrationReport solve_three_point(double h, const CalibrationPoint& p1,
                                    const CalibrationPoint& p2,
                                    const CalibrationPoint& p3,
                                    int image_w, int image_h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    raise(errc::invalid_argument, "camera height must be positive and finite");
  }
  std::array<CalibrationPoint, 3> pts = {p1, p2, p3};
  for (const auto& p : pts) {
    if (!(p.d > 0.0) || !std::isfinite(p.d) || !std::isfinite(p.v)) {
      raise(errc::invalid_argument, "calibration point out of range");
    }
  }

  // Canonical order: ascending distance. Makes the closed form exactly
  // permutation invariant.
  std::sort(pts.begin(), pts.end(),
            [](const CalibrationPoint& a, const CalibrationPoint& b) { return a.d < b.d; });

  if (pts[0].d == pts[1].d || pts[1].d == pts[2].d) {
    raise(errc::degenerate_distances, "calibration distances must be pairwise distinct");
  }
  if (pts[0].v == pts[1].v || pts[1].v == pts[2].v || pts[0].v == pts[2].v) {
    raise(errc::degenerate_rows, "calibration rows must be pairwise distinct");
  }
  // Ground-plane ordering: nearer points image lower (larger v).
  if (!(pts[0].v > pts[1].v && pts[1].v > pts[2].v)) {
    raise(errc::invalid_argument,
          "inconsistent point ordering: rows must decrease as distance grows");
  }

  const double t1 = h / pts[0].d, t2 = h / pts[1].d, t3 = h / pts[2].d;
  const double v1 = pts[0].v, v2 = pts[1].v, v3 = pts[2].v;

  const double r = (v1 - v2) / (v1 - v3);
  const double den = (t1 - t2) * t3 - r * (t1 - t3) * t2;
  if (std::fabs(den) < kSingularEps) {
    raise(errc::singular_system, "three-point system is singular");
  }
  const double a = (r * (t1 - t3) - (t1 - t2)) / den;
  const double f_y =
      (v1 - v3) * (1.0 + t1 * a) * (1.0 + t3 * a) / ((t1 - t3) * (1.0 + a * a));
  const double v0 = v1 - f_y * (t1 - a) / (1.0 + t1 * a);

  if (!(f_y > 0.0) || !std::isfinite(f_y) || !std::isfinite(a) || !std::isfinite(v0)) {
    raise(errc::implausible_solution, "solved focal ratio is not positive and finite");
  }

  CalibrationReport report;
  report.params = CameraParams{h, std::atan(a), f_y, v0, image_w, image_h};
  report.method = CalibrationMethod::three_point_exact;
  report.residuals =
      row_residuals(h, {pts[0], pts[1], pts[2]}, report.params);
  for (double res : report.residuals) {
    if (std::fabs(res) >= kReprojectTolPx) {
      raise(errc::implausible_solution,
            "solution does not reproduce its inputs (residual " +
                std::to_string(res) + " px)");
    }
  }
  return report;
}

CalibrationReport refine_least_squares(double h,
                                       const std::vector<CalibrationPoint>& points,
                                       const CameraParams& init, int max_iter,
                                       double tol) {
  if (points.size() < 3) {
    raise(errc::invalid_argument, "least-squares refinement needs at least 3 points");
  }
  require_valid(init);
  if (!(h > 0.0) || !std::isfinite(h)) {
    raise(errc::invalid_argument, "camera height must be positive and finite");
  }
  for (const auto& p : points) {
    if (!(p.d > 0.0) || !std::isfinite(p.d) || !std::isfinite(p.v)) {
      raise(errc::invalid_argument, "calibration point out of range");
    }
  }

  double alpha = init.alpha, f_y = init.f_y, v0 = init.v0;
  CameraParams best{h, alpha, f_y, v0, init.image_w, init.image_h};
  double best_ssr = sum_sq(row_residuals(h, points, best));

  CalibrationReport report;
  report.method = CalibrationMethod::least_squares;
  report.converged = false;

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    // Normal equations J^T J dx = J^T r for the model
    // v(d) = v0 + f_y * tan(atan(h/d) - alpha), residual r = v_obs - v(d).
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (const auto& pt : points) {
      const double tv = std::tan(std::atan(h / pt.d) - alpha);
      const double res = pt.v - (v0 + f_y * tv);
      const std::array<double, 3> j = {-f_y * (1.0 + tv * tv), tv, 1.0};
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) jtj[r][c] += j[r] * j[c];
        jtr[r] += j[r] * res;
      }
    }
    std::array<double, 3> step{};
    if (!solve3x3(jtj, jtr, step)) {
      raise(errc::singular_normal_equations, "normal equations are singular");
    }
    alpha += step[0];
    f_y += step[1];
    v0 += step[2];

    const CameraParams cur{h, alpha, f_y, v0, init.image_w, init.image_h};
    if (cur.valid()) {
      const double ssr = sum_sq(row_residuals(h, points, cur));
      if (ssr <= best_ssr) {
        best_ssr = ssr;
        best = cur;
      }
    }
    const double step_norm =
        std::sqrt(step[0] * step[0] + step[1] * step[1] + step[2] * step[2]);
    if (step_norm < tol) {
      report.converged = true;
      break;
    }
  }

  report.iterations = iter;
  report.params = best;
  report.residuals = row_residuals(h, points, best);
  return report;
}

}  // namespace monofcw
