#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "monofcw/detector.hpp"
#include "monofcw/scene.hpp"

namespace monofcw {

struct MetricsReport {
  double detection_rate = 0.0;  // matched ground truths / total ground truths
  double fppi = 0.0;            // unmatched detections / images
  int matched = 0;
  int total_gt = 0;
  int false_positives = 0;
  int images = 0;
};

// Greedy one-to-one matching per image: detections by descending score
// (ties by input order), each matching the still-unmatched ground truth of
// highest IoU >= iou_min. The two lists must be parallel per image.
// detection_rate is 1 when there is no ground truth at all.
MetricsReport evaluate(const std::vector<std::vector<Detection>>& detections,
                       const std::vector<std::vector<GroundTruthBox>>& ground_truth,
                       double iou_min);

struct DistanceErrorRow {
  double d_true = 0.0;
  double d_est = 0.0;
  double e_abs = 0.0;  // |d - d'| [m]
  double e_rel = 0.0;  // e_abs / d
};

// Absolute and relative measurement error per (true, estimated) pair.
std::vector<DistanceErrorRow> distance_errors(
    const std::vector<std::pair<double, double>>& pairs);

struct QuantizationOptions {
  int trials = 10000;
  double row_noise = 1.0;      // uniform(-row_noise, row_noise) [px]
  bool round_to_pixel = true;  // integer-pixel quantization of the row
  std::uint64_t seed = 0;
};

struct QuantizationRow {
  double d = 0.0;
  double mean_d_est = 0.0;
  double mean_e_abs = 0.0;
  double mean_e_rel = 0.0;
  int used = 0;     // trials contributing to the means
  int skipped = 0;  // rows that left the valid angular domain
};

// Monte Carlo study of row quantization: per trial the exact row of d is
// perturbed, optionally rounded to an integer pixel, and measured back.
// Deterministic per seed; trial streams are derived by counter.
std::vector<QuantizationRow> quantization_study(const CameraParams& params,
                                                const std::vector<double>& distances,
                                                const QuantizationOptions& options = {});

}  // namespace monofcw
