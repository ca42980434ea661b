#include "monofcw/scene.hpp"

#include <algorithm>
#include <cmath>

#include "monofcw/detector.hpp"
#include "monofcw/error.hpp"
#include "monofcw/rng.hpp"

namespace monofcw {

namespace {

std::uint8_t clamp_shade(double v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

void fill_rect(Image8& img, int x0, int y0, int x1, int y1, std::uint8_t shade) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width);
  y1 = std::min(y1, img.height);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      std::uint8_t* px = img.pixel(x, y);
      px[0] = px[1] = px[2] = shade;
    }
  }
}

void add_noise(Image8& img, int x0, int y0, int x1, int y1, int amplitude,
               SplitMix64& rng) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width);
  y1 = std::min(y1, img.height);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const int delta =
          static_cast<int>(rng.below(2 * amplitude + 1)) - amplitude;
      std::uint8_t* px = img.pixel(x, y);
      const std::uint8_t v = clamp_shade(px[0] + delta);
      px[0] = px[1] = px[2] = v;
    }
  }
}

// Projected box of a vehicle, real-valued.
GroundTruthBox project_vehicle(const CameraParams& params, const Vehicle& veh) {
  const double v_bottom = row_from_distance(params, veh.d);
  const double w = params.f_y * veh.real_w / veh.d;
  const double h = params.f_y * veh.real_h / veh.d;
  const double cx = params.image_w / 2.0 + params.f_y * veh.lateral / veh.d;
  return {cx - w / 2.0, v_bottom - h, w, h, veh.d};
}

bool fully_outside(const GroundTruthBox& b, int image_w, int image_h) {
  return b.x + b.w <= 0.0 || b.x >= image_w || b.y + b.h <= 0.0 || b.y >= image_h;
}

}  // namespace

RenderedScene render_scene(const SceneSpec& spec) {
  require_valid(spec.params);
  if (spec.params.image_w <= 0 || spec.params.image_h <= 0) {
    raise(errc::invalid_argument, "scene needs positive image dimensions");
  }
  for (const Vehicle& veh : spec.vehicles) {
    if (!(veh.d > 0.0) || !(veh.real_w > 0.0) || !(veh.real_h > 0.0)) {
      raise(errc::invalid_argument, "vehicle spec out of range");
    }
  }

  RenderedScene scene;
  scene.image = Image8(spec.params.image_w, spec.params.image_h, spec.background);

  SplitMix64 rng(spec.seed);
  add_noise(scene.image, 0, 0, scene.image.width, scene.image.height, 4, rng);

  // Painter's order: far vehicles first.
  std::vector<const Vehicle*> order;
  for (const Vehicle& veh : spec.vehicles) order.push_back(&veh);
  std::stable_sort(order.begin(), order.end(),
                   [](const Vehicle* a, const Vehicle* b) { return a->d > b->d; });

  for (const Vehicle* veh : order) {
    const GroundTruthBox box = project_vehicle(spec.params, *veh);
    if (fully_outside(box, scene.image.width, scene.image.height)) continue;

    const int x0 = static_cast<int>(std::lround(box.x));
    const int y0 = static_cast<int>(std::lround(box.y));
    const int x1 = static_cast<int>(std::lround(box.x + box.w));
    const int y1 = static_cast<int>(std::lround(box.y + box.h));
    const int border = std::max(1, static_cast<int>(std::lround(0.05 * box.h)));

    // Body, dark frame, windshield band, ground shadow.
    fill_rect(scene.image, x0, y0, x1, y1, veh->shade);
    const std::uint8_t dark = clamp_shade(veh->shade * 0.45);
    fill_rect(scene.image, x0, y0, x1, y0 + border, dark);
    fill_rect(scene.image, x0, y1 - border, x1, y1, dark);
    fill_rect(scene.image, x0, y0, x0 + border, y1, dark);
    fill_rect(scene.image, x1 - border, y0, x1, y1, dark);
    fill_rect(scene.image, x0 + border,
              y0 + static_cast<int>(std::lround(0.12 * box.h)), x1 - border,
              y0 + static_cast<int>(std::lround(0.34 * box.h)),
              clamp_shade(veh->shade * 0.6));
    fill_rect(scene.image, x0, y1 - std::max(1, static_cast<int>(std::lround(0.06 * box.h))),
              x1, y1, 25);
    add_noise(scene.image, x0, y0, x1, y1, 6, rng);

    scene.boxes.push_back(box);
  }
  return scene;
}

std::vector<SizeAnchor> pinhole_anchors(const CameraParams& params, double real_w,
                                        double real_h,
                                        std::span<const double> distances) {
  require_valid(params);
  static constexpr double kDefaultDistances[] = {5.0, 10.0, 20.0, 40.0};
  std::span<const double> ds =
      distances.empty() ? std::span<const double>(kDefaultDistances) : distances;
  std::vector<SizeAnchor> anchors;
  anchors.reserve(ds.size());
  for (double d : ds) {
    anchors.push_back({d, params.f_y * real_w / d, params.f_y * real_h / d});
  }
  return anchors;
}

std::vector<SceneSpec> sample_corpus(const CameraParams& params,
                                     const CorpusOptions& options) {
  require_valid(params);
  if (options.scenes < 1 || options.min_vehicles < 1 ||
      options.max_vehicles < options.min_vehicles || !(options.d_min > 0.0) ||
      !(options.d_max >= options.d_min)) {
    raise(errc::invalid_argument, "corpus options out of range");
  }

  std::vector<SceneSpec> corpus;
  corpus.reserve(options.scenes);
  const double log_ratio = std::log(options.d_max / options.d_min);

  for (int i = 0; i < options.scenes; ++i) {
    SplitMix64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(i)));
    SceneSpec spec;
    spec.params = params;
    spec.background = static_cast<std::uint8_t>(100 + rng.below(70));
    spec.seed = derive_seed(options.seed, 0x10000u + static_cast<std::uint64_t>(i));

    const int want = options.min_vehicles +
                     static_cast<int>(rng.below(
                         static_cast<std::uint64_t>(options.max_vehicles - options.min_vehicles + 1)));
    std::vector<GroundTruthBox> placed;
    for (int v = 0; v < want; ++v) {
      for (int attempt = 0; attempt < 40; ++attempt) {
        Vehicle veh;
        veh.d = options.d_min * std::exp(rng.uniform01() * log_ratio);
        veh.real_w = rng.uniform(1.65, 1.95);
        veh.real_h = veh.real_w / rng.uniform(1.15, 1.30);
        const double lat_bound =
            std::min(3.0, params.image_w * veh.d / (2.0 * params.f_y) -
                              veh.real_w / 2.0 - 0.15);
        if (lat_bound <= 0.0) continue;
        veh.lateral = rng.uniform(-lat_bound, lat_bound);
        const double offset = rng.uniform(45.0, 105.0);
        const double shade = rng.below(2) ? spec.background + offset
                                          : spec.background - offset;
        veh.shade = clamp_shade(std::clamp(shade, 25.0, 230.0));

        const GroundTruthBox box = project_vehicle(params, veh);
        if (box.y < 0.0 || box.y + box.h > params.image_h || box.x < 0.0 ||
            box.x + box.w > params.image_w) {
          continue;
        }
        bool overlaps = false;
        for (const GroundTruthBox& other : placed) {
          if (iou(box.x, box.y, box.w, box.h, other.x, other.y, other.w, other.h) >=
              0.1) {
            overlaps = true;
            break;
          }
        }
        if (overlaps) continue;
        placed.push_back(box);
        spec.vehicles.push_back(veh);
        break;
      }
    }
    corpus.push_back(std::move(spec));
  }
  return corpus;
}

TrainingSet make_training_set(const CameraParams& params,
                              const TrainingSetOptions& options) {
  require_valid(params);
  if (options.num_pos < 1 || options.num_neg < 1 || options.model_w < 8 ||
      options.model_h < 8) {
    raise(errc::invalid_argument, "training set options out of range");
  }

  TrainingSet set;
  set.positives.reserve(options.num_pos);
  set.negatives.reserve(options.num_neg);

  CorpusOptions corpus_options;
  corpus_options.scenes = (options.num_pos + 3) / 4 + 8;
  corpus_options.min_vehicles = 2;
  corpus_options.max_vehicles = 4;
  corpus_options.d_min = options.d_min;
  corpus_options.d_max = options.d_max;
  corpus_options.seed = derive_seed(options.seed, 0xBEEF);
  const std::vector<SceneSpec> scenes = sample_corpus(params, corpus_options);

  const int negs_per_scene =
      static_cast<int>(scenes.size()) > 0
          ? (options.num_neg + static_cast<int>(scenes.size()) - 1) /
                static_cast<int>(scenes.size())
          : options.num_neg;
  const double log_ratio = std::log(options.d_max / options.d_min);
  const double nominal_aspect =
      static_cast<double>(options.model_w) / options.model_h;

  SplitMix64 rng(derive_seed(options.seed, 0xF00D));
  for (const SceneSpec& spec : scenes) {
    const RenderedScene scene = render_scene(spec);
    for (const GroundTruthBox& box : scene.boxes) {
      if (static_cast<int>(set.positives.size()) >= options.num_pos) break;
      // Small geometric jitter teaches tolerance to the scan grid.
      const double js = rng.uniform(0.96, 1.04);
      const double jx = rng.uniform(-0.03, 0.03) * box.w;
      const double jy = rng.uniform(-0.03, 0.03) * box.h;
      const double w = box.w * js;
      const double h = box.h * js;
      set.positives.push_back(resample_crop(scene.image,
                                            box.x + jx + (box.w - w) / 2.0,
                                            box.y + jy + (box.h - h) / 2.0, w, h,
                                            options.model_w, options.model_h));
    }
    for (int n = 0; n < negs_per_scene &&
                    static_cast<int>(set.negatives.size()) < options.num_neg;) {
      const double d = options.d_min * std::exp(rng.uniform01() * log_ratio);
      const double h = params.f_y * 1.5 / d * rng.uniform(0.8, 1.25);
      const double w = h * nominal_aspect * rng.uniform(0.9, 1.1);
      if (w >= params.image_w || h >= params.image_h) continue;
      const double x = rng.uniform(0.0, params.image_w - w);
      const double y = rng.uniform(0.0, params.image_h - h);
      bool near_vehicle = false;
      for (const GroundTruthBox& box : scene.boxes) {
        if (iou(x, y, w, h, box.x, box.y, box.w, box.h) >= 0.2) {
          near_vehicle = true;
          break;
        }
      }
      if (near_vehicle) continue;
      set.negatives.push_back(
          resample_crop(scene.image, x, y, w, h, options.model_w, options.model_h));
      ++n;
    }
    if (static_cast<int>(set.positives.size()) >= options.num_pos &&
        static_cast<int>(set.negatives.size()) >= options.num_neg) {
      break;
    }
  }

  // Top up positives from extra scenes if vehicle placement fell short.
  std::uint64_t extra = 0;
  while (static_cast<int>(set.positives.size()) < options.num_pos ||
         static_cast<int>(set.negatives.size()) < options.num_neg) {
    CorpusOptions more = corpus_options;
    more.scenes = 8;
    more.seed = derive_seed(options.seed, 0xC0FFEE + ++extra);
    for (const SceneSpec& spec : sample_corpus(params, more)) {
      const RenderedScene scene = render_scene(spec);
      for (const GroundTruthBox& box : scene.boxes) {
        if (static_cast<int>(set.positives.size()) >= options.num_pos) break;
        set.positives.push_back(resample_crop(scene.image, box.x, box.y, box.w,
                                              box.h, options.model_w,
                                              options.model_h));
      }
      while (static_cast<int>(set.negatives.size()) < options.num_neg) {
        const double d = options.d_min * std::exp(rng.uniform01() * log_ratio);
        const double h = params.f_y * 1.5 / d;
        const double w = h * nominal_aspect;
        if (w >= params.image_w || h >= params.image_h) break;
        const double x = rng.uniform(0.0, params.image_w - w);
        const double y = rng.uniform(0.0, params.image_h - h);
        bool near_vehicle = false;
        for (const GroundTruthBox& box : scene.boxes) {
          if (iou(x, y, w, h, box.x, box.y, box.w, box.h) >= 0.2) {
            near_vehicle = true;
            break;
          }
        }
        if (near_vehicle) continue;
        set.negatives.push_back(
            resample_crop(scene.image, x, y, w, h, options.model_w, options.model_h));
        break;  // one per scene in the top-up pass
      }
    }
    if (extra > 64) {
      raise(errc::invalid_argument, "training sampler failed to fill the request");
    }
  }
  return set;
}

}  // namespace monofcw
