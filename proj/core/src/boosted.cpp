#include "monofcw/boosted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "monofcw/error.hpp"

namespace monofcw {

namespace {

constexpr double kMinError = 1e-12;

struct SplitSearch {
  // feature-major value matrix and per-feature sample order, shared by all
  // nodes and rounds
  std::vector<std::vector<float>> values;  // values[f][i]
  std::vector<std::vector<int>> order;     // order[f]: sample indices, value-ascending
  std::vector<int> labels;                 // +1 / -1
  int num_samples = 0;
  int num_features = 0;

  void build(const std::vector<std::vector<float>>& positives,
             const std::vector<std::vector<float>>& negatives) {
    num_features = static_cast<int>(positives.front().size());
    num_samples = static_cast<int>(positives.size() + negatives.size());
    values.assign(num_features, std::vector<float>(num_samples));
    labels.resize(num_samples);
    int i = 0;
    for (const auto& s : positives) {
      for (int f = 0; f < num_features; ++f) values[f][i] = s[f];
      labels[i++] = 1;
    }
    for (const auto& s : negatives) {
      for (int f = 0; f < num_features; ++f) values[f][i] = s[f];
      labels[i++] = -1;
    }
    order.assign(num_features, {});
    for (int f = 0; f < num_features; ++f) {
      order[f].resize(num_samples);
      std::iota(order[f].begin(), order[f].end(), 0);
      std::stable_sort(order[f].begin(), order[f].end(),
                       [&](int a, int b) { return values[f][a] < values[f][b]; });
    }
  }
};

struct Split {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double error = std::numeric_limits<double>::infinity();
};

// Exhaustive (feature, threshold) search over the node's members: candidate
// thresholds are midpoints between consecutive distinct member values, each
// side labeled by its weighted majority. First candidate wins ties.
Split best_split(const SplitSearch& s, const std::vector<double>& weights,
                 const std::vector<char>& member, double w_pos, double w_neg) {
  Split best;
  for (int f = 0; f < s.num_features; ++f) {
    double wpl = 0.0, wnl = 0.0;  // weight left of the running threshold
    float prev_value = 0.0f;
    bool have_prev = false;
    for (int idx : s.order[f]) {
      if (!member[idx]) continue;
      const float v = s.values[f][idx];
      if (have_prev && v > prev_value) {
        const double err = std::min(wpl, wnl) + std::min(w_pos - wpl, w_neg - wnl);
        if (err < best.error) {
          best.found = true;
          best.feature = f;
          best.threshold = 0.5 * (static_cast<double>(prev_value) + v);
          best.error = err;
        }
      }
      if (s.labels[idx] > 0) {
        wpl += weights[idx];
      } else {
        wnl += weights[idx];
      }
      prev_value = v;
      have_prev = true;
    }
  }
  return best;
}

double majority_label(double w_pos, double w_neg) { return w_pos >= w_neg ? 1.0 : -1.0; }

void side_weights(const SplitSearch& s, const std::vector<double>& weights,
                  const std::vector<char>& member, const Split& split,
                  double& wpl, double& wnl, double& wpr, double& wnr) {
  wpl = wnl = wpr = wnr = 0.0;
  for (int i = 0; i < s.num_samples; ++i) {
    if (!member[i]) continue;
    const bool left = s.values[split.feature][i] < split.threshold;
    if (s.labels[i] > 0) {
      (left ? wpl : wpr) += weights[i];
    } else {
      (left ? wnl : wnr) += weights[i];
    }
  }
}

// Builds a depth-limited tree greedily: a child is split only when that
// strictly lowers its weighted error below the majority leaf.
DecisionTree fit_tree(const SplitSearch& s, const std::vector<double>& weights,
                      int depth) {
  std::vector<char> member(s.num_samples, 1);
  double w_pos = 0.0, w_neg = 0.0;
  for (int i = 0; i < s.num_samples; ++i) {
    (s.labels[i] > 0 ? w_pos : w_neg) += weights[i];
  }

  DecisionTree tree;
  const Split root = best_split(s, weights, member, w_pos, w_neg);
  if (!root.found) {
    tree.nodes.push_back({-1, 0.0, -1, -1, majority_label(w_pos, w_neg)});
    return tree;
  }

  double wpl, wnl, wpr, wnr;
  side_weights(s, weights, member, root, wpl, wnl, wpr, wnr);
  tree.nodes.push_back({root.feature, root.threshold, -1, -1, 0.0});

  const auto emit_child = [&](bool left_side, double wp, double wn) {
    int node_index;
    if (depth >= 2) {
      std::vector<char> sub(s.num_samples, 0);
      for (int i = 0; i < s.num_samples; ++i) {
        if (member[i] &&
            (s.values[root.feature][i] < root.threshold) == left_side) {
          sub[i] = 1;
        }
      }
      const Split child = best_split(s, weights, sub, wp, wn);
      if (child.found && child.error < std::min(wp, wn)) {
        double cwpl, cwnl, cwpr, cwnr;
        side_weights(s, weights, sub, child, cwpl, cwnl, cwpr, cwnr);
        node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({child.feature, child.threshold, -1, -1, 0.0});
        tree.nodes[node_index].left = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({-1, 0.0, -1, -1, majority_label(cwpl, cwnl)});
        tree.nodes[node_index].right = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({-1, 0.0, -1, -1, majority_label(cwpr, cwnr)});
        return node_index;
      }
    }
    node_index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({-1, 0.0, -1, -1, majority_label(wp, wn)});
    return node_index;
  };

  tree.nodes[0].left = emit_child(true, wpl, wnl);
  tree.nodes[0].right = emit_child(false, wpr, wnr);
  return tree;
}

void calibrate_cascade(BoostedClassifier& clf,
                       const std::vector<std::vector<float>>& positives) {
  const std::size_t t_count = clf.trees.size();
  clf.cascade_thresholds.assign(t_count, std::numeric_limits<double>::infinity());
  std::vector<double> prefix(t_count);
  for (const auto& sample : positives) {
    double score = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      score += clf.weights[t] * clf.trees[t].evaluate(sample.data());
      prefix[t] = score;
    }
    // Suffix minimum makes the per-prefix bounds non-decreasing and never
    // rejects any training positive.
    double suffix = std::numeric_limits<double>::infinity();
    for (std::size_t t = t_count; t-- > 0;) {
      suffix = std::min(suffix, prefix[t]);
      clf.cascade_thresholds[t] = std::min(clf.cascade_thresholds[t], suffix);
    }
  }
}

}  // namespace

std::vector<float> flatten_features(const ChannelStack& stack) { return stack.data; }

BoostedClassifier train_on_features(const std::vector<std::vector<float>>& positives,
                                    const std::vector<std::vector<float>>& negatives,
                                    const TrainOptions& options) {
  if (positives.empty() || negatives.empty()) {
    raise(errc::empty_class, "need at least one positive and one negative sample");
  }
  if (options.rounds < 1 || options.depth < 1 || options.depth > 2) {
    raise(errc::invalid_argument, "rounds must be >= 1 and depth 1 or 2");
  }
  const std::size_t nf = positives.front().size();
  for (const auto& s : positives) {
    if (s.size() != nf) raise(errc::invalid_argument, "sample feature counts differ");
  }
  for (const auto& s : negatives) {
    if (s.size() != nf) raise(errc::invalid_argument, "sample feature counts differ");
  }

  SplitSearch search;
  search.build(positives, negatives);

  std::vector<double> weights(search.num_samples, 1.0 / search.num_samples);
  BoostedClassifier clf;

  for (int round = 0; round < options.rounds; ++round) {
    DecisionTree tree = fit_tree(search, weights, options.depth);

    std::vector<float> sample(nf);
    std::vector<double> predictions(search.num_samples);
    double err = 0.0;
    for (int i = 0; i < search.num_samples; ++i) {
      for (std::size_t f = 0; f < nf; ++f) sample[f] = search.values[f][i];
      predictions[i] = tree.evaluate(sample.data());
      if (predictions[i] * search.labels[i] <= 0.0) err += weights[i];
    }

    if (err >= 0.5) break;  // no weak learner left

    const double clamped = std::max(err, kMinError);
    const double alpha = 0.5 * std::log((1.0 - clamped) / clamped);
    clf.trees.push_back(std::move(tree));
    clf.weights.push_back(alpha);

    if (err < kMinError) break;  // perfect learner; further rounds add nothing

    double wsum = 0.0;
    for (int i = 0; i < search.num_samples; ++i) {
      weights[i] *= std::exp(-alpha * search.labels[i] * predictions[i]);
      wsum += weights[i];
    }
    for (double& w : weights) w /= wsum;
  }

  calibrate_cascade(clf, positives);
  return clf;
}

BoostedClassifier train(const std::vector<Image8>& positives,
                        const std::vector<Image8>& negatives,
                        const TrainOptions& options,
                        const ChannelConfig& channel_config) {
  if (positives.empty() || negatives.empty()) {
    raise(errc::empty_class, "need at least one positive and one negative sample");
  }
  const int w = positives.front().width;
  const int h = positives.front().height;
  const auto to_features = [&](const std::vector<Image8>& images) {
    std::vector<std::vector<float>> out;
    out.reserve(images.size());
    for (const Image8& img : images) {
      if (img.width != w || img.height != h) {
        raise(errc::invalid_argument, "training samples must share the model window size");
      }
      out.push_back(flatten_features(compute_channels(img, channel_config)));
    }
    return out;
  };

  const auto pos = to_features(positives);
  const auto neg = to_features(negatives);
  BoostedClassifier clf = train_on_features(pos, neg, options);
  clf.window_w = w;
  clf.window_h = h;
  clf.shrink = channel_config.shrink;
  clf.num_orientations = channel_config.num_orientations;
  return clf;
}

}  // namespace monofcw
