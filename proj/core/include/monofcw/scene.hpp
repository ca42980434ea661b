#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "monofcw/geometry.hpp"
#include "monofcw/image.hpp"
#include "monofcw/window_planner.hpp"

namespace monofcw {

// One synthetic vehicle on the ground plane.
struct Vehicle {
  double d = 10.0;        // longitudinal distance [m]
  double lateral = 0.0;   // offset from the optical axis [m], right positive
  double real_w = 1.8;    // physical width [m]
  double real_h = 1.5;    // physical height [m]
  std::uint8_t shade = 200;
};

struct SceneSpec {
  CameraParams params;
  std::vector<Vehicle> vehicles;
  std::uint8_t background = 128;
  std::uint64_t seed = 0;  // texture noise
};

// Real-valued ground-truth box; bottom edge y + h sits exactly at
// row_from_distance(d), so back-projecting it recovers d.
struct GroundTruthBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double d = 0.0;
};

struct RenderedScene {
  Image8 image;
  std::vector<GroundTruthBox> boxes;  // drawn back-to-front order
};

// Draws each vehicle as a textured rectangle under the pinhole projection
// with square pixels (f_x = f_y): pixel size f_y*real/d, bottom row
// row_from_distance(d), horizontal center image_w/2 + f_y*lateral/d.
// Vehicles render far-to-near; fully out-of-frame vehicles are omitted
// from the ground truth. Light seeded noise gives the detector gradients.
RenderedScene render_scene(const SceneSpec& spec);

// Anchors consistent with the renderer's pinhole model for a nominal
// vehicle size: exact 1/d scaling through the given distances.
std::vector<SizeAnchor> pinhole_anchors(const CameraParams& params,
                                        double real_w = 1.8, double real_h = 1.5,
                                        std::span<const double> distances = {});

// --- standard synthetic benchmark -----------------------------------------

struct CorpusOptions {
  int scenes = 200;
  int min_vehicles = 1;
  int max_vehicles = 4;
  double d_min = 5.0;
  double d_max = 40.0;
  std::uint64_t seed = 1;
};

// Seeded scene sampler: log-uniform distances, lateral positions kept fully
// inside the frame, shades contrasting with the background, and placements
// rejected until projected boxes barely overlap (pairwise IoU < 0.1).
std::vector<SceneSpec> sample_corpus(const CameraParams& params,
                                     const CorpusOptions& options = {});

struct TrainingSetOptions {
  int num_pos = 500;
  int num_neg = 2000;
  int model_w = 64;
  int model_h = 48;
  double d_min = 5.0;
  double d_max = 40.0;
  std::uint64_t seed = 2;
};

struct TrainingSet {
  std::vector<Image8> positives;  // model-window sized
  std::vector<Image8> negatives;
};

// Renders seeded single-purpose scenes and crops model-window samples:
// positives are jittered ground-truth boxes, negatives random windows with
// the plan's size statistics and IoU < 0.2 against every vehicle.
TrainingSet make_training_set(const CameraParams& params,
                              const TrainingSetOptions& options = {});

}  // namespace monofcw
