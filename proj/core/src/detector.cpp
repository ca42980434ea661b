#include "monofcw/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "monofcw/error.hpp"

namespace monofcw {

namespace {

int resolve_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("MONOFCW_THREADS")) {
      n = std::atoi(env);
    }
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

// Cell-lookup geometry of one band: model cell centers mapped into window
// pixel offsets once, reused for every window of the band.
struct BandLookup {
  std::vector<double> off_x;  // per model cell column, window-relative [px]
  std::vector<double> off_y;
};

BandLookup make_lookup(const BoostedClassifier& clf, int win_w, int win_h) {
  BandLookup lut;
  const int cx = clf.cells_x();
  const int cy = clf.cells_y();
  lut.off_x.resize(cx);
  lut.off_y.resize(cy);
  for (int i = 0; i < cx; ++i) {
    lut.off_x[i] = (i + 0.5) * static_cast<double>(win_w) / cx;
  }
  for (int i = 0; i < cy; ++i) {
    lut.off_y[i] = (i + 0.5) * static_cast<double>(win_h) / cy;
  }
  return lut;
}

struct WindowContext {
  const ChannelStack* stack;
  const BoostedClassifier* clf;
  const BandLookup* lut;
  int x, y;

  float feature(int index) const {
    const int cells = clf->cells_x() * clf->cells_y();
    const int c = index / cells;
    const int rem = index % cells;
    const int my = rem / clf->cells_x();
    const int mx = rem % clf->cells_x();
    int sx = static_cast<int>((x + lut->off_x[mx]) / stack->shrink);
    int sy = static_cast<int>((y + lut->off_y[my]) / stack->shrink);
    sx = std::clamp(sx, 0, stack->width - 1);
    sy = std::clamp(sy, 0, stack->height - 1);
    return stack->at(c, sy, sx);
  }
};

double tree_eval(const DecisionTree& tree, const WindowContext& ctx) {
  int i = 0;
  while (tree.nodes[i].feature >= 0) {
    i = ctx.feature(tree.nodes[i].feature) < tree.nodes[i].threshold
            ? tree.nodes[i].left
            : tree.nodes[i].right;
  }
  return tree.nodes[i].leaf_value;
}

void require_compatible(const ChannelStack& stack, const BoostedClassifier& clf) {
  if (clf.window_w <= 0 || clf.window_h <= 0 || clf.trees.empty()) {
    raise(errc::invalid_argument, "classifier has no model window or no trees");
  }
  if (stack.shrink != clf.shrink || stack.num_orientations != clf.num_orientations) {
    raise(errc::invalid_argument, "channel stack layout differs from the classifier's");
  }
}

}  // namespace

double evaluate_window(const ChannelStack& stack, const BoostedClassifier& clf,
                       int x, int y, int w, int h) {
  require_compatible(stack, clf);
  const BandLookup lut = make_lookup(clf, w, h);
  const WindowContext ctx{&stack, &clf, &lut, x, y};
  double score = 0.0;
  for (std::size_t t = 0; t < clf.trees.size(); ++t) {
    score += clf.weights[t] * tree_eval(clf.trees[t], ctx);
  }
  return score;
}

std::vector<Detection> scan(const ChannelStack& stack, const WindowPlan& plan,
                            const BoostedClassifier& clf, const ScanOptions& options) {
  require_compatible(stack, clf);
  const double model_aspect =
      static_cast<double>(clf.window_w) / static_cast<double>(clf.window_h);
  for (const WindowBand& band : plan.bands) {
    const double band_aspect = static_cast<double>(band.w) / band.h;
    const double ratio = band_aspect / model_aspect;
    if (ratio > 1.5 || ratio < 1.0 / 1.5) {
      raise(errc::model_plan_mismatch,
            "band aspect " + std::to_string(band_aspect) +
                " too far from model aspect " + std::to_string(model_aspect));
    }
  }

  const std::vector<WindowRect> windows = enumerate_windows(plan);
  std::vector<BandLookup> lookups;
  lookups.reserve(plan.bands.size());
  for (const WindowBand& band : plan.bands) {
    lookups.push_back(make_lookup(clf, band.w, band.h));
  }

  const std::size_t t_count = clf.trees.size();
  const bool prune = std::isfinite(options.cascade_margin) &&
                     clf.cascade_thresholds.size() == t_count;

  std::vector<double> scores(windows.size());
  std::vector<char> accepted(windows.size(), 0);

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const WindowRect& win = windows[i];
      const WindowContext ctx{&stack, &clf, &lookups[win.band], win.x, win.y};
      double score = 0.0;
      bool rejected = false;
      for (std::size_t t = 0; t < t_count; ++t) {
        score += clf.weights[t] * tree_eval(clf.trees[t], ctx);
        if (prune && score < clf.cascade_thresholds[t] - options.cascade_margin) {
          rejected = true;
          break;
        }
      }
      if (!rejected && score >= options.score_min) {
        scores[i] = score;
        accepted[i] = 1;
      }
    }
  };

  const int threads = resolve_threads(options.threads);
  if (threads <= 1 || windows.size() < 256) {
    run_range(0, windows.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (windows.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(windows.size(), t * chunk);
      const std::size_t end = std::min(windows.size(), begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  const double horizon = horizon_row(plan.params);
  std::vector<Detection> detections;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (!accepted[i]) continue;
    const WindowRect& win = windows[i];
    Detection det{win.x, win.y, win.w, win.h, scores[i], -1.0};
    const double bottom = static_cast<double>(win.y) + win.h;
    if (bottom > horizon) {
      try {
        det.distance = distance_from_row(plan.params, bottom);
      } catch (const Error&) {
        det.distance = -1.0;  // numerically at the horizon
      }
    }
    detections.push_back(det);
  }
  return detections;
}

double iou(double ax, double ay, double aw, double ah,
           double bx, double by, double bw, double bh) {
  const double ix = std::max(0.0, std::min(ax + aw, bx + bw) - std::max(ax, bx));
  const double iy = std::max(0.0, std::min(ay + ah, by + bh) - std::max(ay, by));
  const double inter = ix * iy;
  const double uni = aw * ah + bw * bh - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double iou(const Detection& a, const Detection& b) {
  return iou(a.x, a.y, a.w, a.h, b.x, b.y, b.w, b.h);
}

std::vector<Detection> nms(const std::vector<Detection>& detections, double iou_max) {
  if (iou_max < 0.0 || iou_max > 1.0) {
    raise(errc::invalid_argument, "iou_max must lie in [0, 1]");
  }
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].score > detections[b].score;
  });

  std::vector<Detection> kept;
  for (std::size_t idx : order) {
    bool suppressed = false;
    for (const Detection& k : kept) {
      if (iou(detections[idx], k) > iou_max) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(detections[idx]);
  }
  return kept;
}

}  // namespace monofcw
