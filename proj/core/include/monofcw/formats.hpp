#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "monofcw/boosted.hpp"
#include "monofcw/calibration.hpp"
#include "monofcw/detector.hpp"
#include "monofcw/fcw.hpp"
#include "monofcw/geometry.hpp"
#include "monofcw/scene.hpp"
#include "monofcw/window_planner.hpp"

// Line-oriented text formats. All numbers use '.' as the decimal separator
// and are written in the shortest form that parses back to the identical
// value, so write -> read -> write is byte-identical. Files end with a
// newline. Parse failures throw parse_error naming file and line.

namespace monofcw {

std::string format_double(double value);
std::string format_int(long long value);

// Calibration file: "key = value" per line; keys h_m, alpha_rad, fy_px,
// v0_px, image_w, image_h. Unknown or duplicate keys are rejected.
void write_calibration_file(const std::filesystem::path& path, const CameraParams& params);
CameraParams read_calibration_file(const std::filesystem::path& path);

// Points file: "d_m v_px" per line; blank lines and '#' comments allowed.
std::vector<CalibrationPoint> read_points_file(const std::filesystem::path& path);
void write_points_file(const std::filesystem::path& path,
                       const std::vector<CalibrationPoint>& points);

// Anchors file: "d_m w_px h_px" per line; blank lines and '#' comments allowed.
std::vector<SizeAnchor> read_anchors_file(const std::filesystem::path& path);
void write_anchors_file(const std::filesystem::path& path,
                        const std::vector<SizeAnchor>& anchors);

// Plan file: header "#monofcw-plan v1", then per band
// "d_m v_anchor v_tol w h x_stride v_stride".
void write_plan_file(const std::filesystem::path& path, const WindowPlan& plan);
// The plan file carries no camera parameters; the caller re-attaches them.
WindowPlan read_plan_file(const std::filesystem::path& path, const CameraParams& params);

// Classifier file: header "#monofcw-clf v1", a model-window line
// "window w h shrink orientations", one line per tree node
// "tree_idx node_idx feature_idx threshold left right leaf_value",
// then "cascade t0 t1 ...". Boosting weights are folded into the leaf
// values on write; a loaded classifier carries unit weights and scores
// bit-identically to the trained one.
void write_classifier_file(const std::filesystem::path& path, const BoostedClassifier& clf);
BoostedClassifier read_classifier_file(const std::filesystem::path& path);

// Detections file: "image_path x y w h score d_m" per line, plus a trailing
// warning-level column when FCW annotation is on. d_m is -1 without
// calibration. Paths must not contain whitespace.
struct DetectionRecord {
  std::string image;
  Detection det;
  std::optional<WarningLevel> level;
};
void write_detections_file(const std::filesystem::path& path,
                           const std::vector<DetectionRecord>& records);
std::vector<DetectionRecord> read_detections_file(const std::filesystem::path& path);

// Annotations file: "image_path x y w h d_m" per line, real-valued boxes.
struct AnnotationRecord {
  std::string image;
  GroundTruthBox box;
};
void write_annotations_file(const std::filesystem::path& path,
                            const std::vector<AnnotationRecord>& records);
std::vector<AnnotationRecord> read_annotations_file(const std::filesystem::path& path);

}  // namespace monofcw
