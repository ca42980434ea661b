#include "monofcw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "monofcw/error.hpp"
#include "monofcw/rng.hpp"

namespace monofcw {

MetricsReport evaluate(const std::vector<std::vector<Detection>>& detections,
                       const std::vector<std::vector<GroundTruthBox>>& ground_truth,
                       double iou_min) {
  if (!(iou_min > 0.0) || !(iou_min < 1.0)) {
    raise(errc::invalid_argument, "iou_min must lie in (0, 1)");
  }
  if (detections.size() != ground_truth.size()) {
    raise(errc::invalid_argument, "detections and ground truth differ in image count");
  }

  MetricsReport report;
  report.images = static_cast<int>(detections.size());
  for (std::size_t img = 0; img < detections.size(); ++img) {
    const auto& dets = detections[img];
    const auto& gts = ground_truth[img];
    report.total_gt += static_cast<int>(gts.size());

    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return dets[a].score > dets[b].score;
    });

    std::vector<char> taken(gts.size(), 0);
    for (std::size_t idx : order) {
      const Detection& det = dets[idx];
      double best = iou_min;
      int best_gt = -1;
      for (std::size_t g = 0; g < gts.size(); ++g) {
        if (taken[g]) continue;
        const double overlap =
            iou(det.x, det.y, det.w, det.h, gts[g].x, gts[g].y, gts[g].w, gts[g].h);
        if (overlap >= best && (best_gt < 0 || overlap > best)) {
          best = overlap;
          best_gt = static_cast<int>(g);
        }
      }
      if (best_gt >= 0) {
        taken[best_gt] = 1;
        ++report.matched;
      } else {
        ++report.false_positives;
      }
    }
  }

  report.detection_rate =
      report.total_gt > 0 ? static_cast<double>(report.matched) / report.total_gt : 1.0;
  report.fppi = report.images > 0
                    ? static_cast<double>(report.false_positives) / report.images
                    : 0.0;
  return report;
}

std::vector<DistanceErrorRow> distance_errors(
    const std::vector<std::pair<double, double>>& pairs) {
  std::vector<DistanceErrorRow> rows;
  rows.reserve(pairs.size());
  for (const auto& [d_true, d_est] : pairs) {
    if (!(d_true > 0.0)) {
      raise(errc::invalid_argument, "true distance must be positive");
    }
    const double e_abs = std::fabs(d_true - d_est);
    rows.push_back({d_true, d_est, e_abs, e_abs / d_true});
  }
  return rows;
}

std::vector<QuantizationRow> quantization_study(const CameraParams& params,
                                                const std::vector<double>& distances,
                                                const QuantizationOptions& options) {
  require_valid(params);
  if (options.trials < 1 || options.row_noise < 0.0) {
    raise(errc::invalid_argument, "quantization options out of range");
  }

  std::vector<QuantizationRow> rows;
  rows.reserve(distances.size());
  for (std::size_t di = 0; di < distances.size(); ++di) {
    const double d = distances[di];
    const double v_true = row_from_distance(params, d);
    QuantizationRow row;
    row.d = d;
    double sum_d = 0.0, sum_abs = 0.0, sum_rel = 0.0;
    for (int trial = 0; trial < options.trials; ++trial) {
      SplitMix64 rng(derive_seed(options.seed,
                                 (static_cast<std::uint64_t>(di) << 32) |
                                     static_cast<std::uint64_t>(trial)));
      double v = v_true;
      if (options.row_noise > 0.0) {
        v += rng.uniform(-options.row_noise, options.row_noise);
      }
      if (options.round_to_pixel) v = std::round(v);
      double d_est;
      try {
        d_est = distance_from_row(params, v);
      } catch (const Error&) {
        ++row.skipped;
        continue;
      }
      sum_d += d_est;
      sum_abs += std::fabs(d_est - d);
      sum_rel += std::fabs(d_est - d) / d;
      ++row.used;
    }
    if (row.used > 0) {
      row.mean_d_est = sum_d / row.used;
      row.mean_e_abs = sum_abs / row.used;
      row.mean_e_rel = sum_rel / row.used;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace monofcw
