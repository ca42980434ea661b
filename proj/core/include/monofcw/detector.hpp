#pragma once

#include <vector>

#include "monofcw/boosted.hpp"
#include "monofcw/window_planner.hpp"

namespace monofcw {

struct Detection {
  int x = 0;
  int y = 0;  // top edge
  int w = 0;
  int h = 0;
  double score = 0.0;
  double distance = -1.0;  // back-projected from the bottom row; -1 if unavailable
};

struct ScanOptions {
  double score_min = 0.0;
  // Prefix score slack before a window is rejected; +infinity disables
  // pruning entirely.
  double cascade_margin = 1.0;
  // Worker threads; 0 reads MONOFCW_THREADS (0 or unset = hardware).
  int threads = 0;
};

// Evaluates the classifier over every window of the plan. Windows whose
// size differs from the model window are read through nearest-cell lookup
// after scaling coordinates into the model grid; no image pyramid is built.
// Detections come back in deterministic window order (band, row, column)
// regardless of thread count, with bit-identical scores.
//
// Throws model_plan_mismatch when a band's aspect ratio differs from the
// model window's by more than 50%.
std::vector<Detection> scan(const ChannelStack& stack, const WindowPlan& plan,
                            const BoostedClassifier& clf,
                            const ScanOptions& options = {});

// Full ensemble score of one window, no cascade. Same accumulation order as
// scan, so scores agree bit-for-bit.
double evaluate_window(const ChannelStack& stack, const BoostedClassifier& clf,
                       int x, int y, int w, int h);

// Intersection over union of two axis-aligned boxes.
double iou(double ax, double ay, double aw, double ah,
           double bx, double by, double bw, double bh);
double iou(const Detection& a, const Detection& b);

// Greedy non-maximum suppression: keep by descending score (ties by input
// order), drop anything overlapping a kept box with IoU > iou_max.
std::vector<Detection> nms(const std::vector<Detection>& detections,
                           double iou_max = 0.5);

}  // namespace monofcw
