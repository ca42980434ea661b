#pragma once

#include <cstdint>
#include <vector>

#include "monofcw/channels.hpp"

namespace monofcw {

// One node of an axis-aligned threshold tree. Leaves have feature == -1 and
// carry the vote in leaf_value; internal nodes route x[feature] < threshold
// to left, else right.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double leaf_value = 0.0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double evaluate(const float* features) const {
    int i = 0;
    while (nodes[i].feature >= 0) {
      i = features[nodes[i].feature] < nodes[i].threshold ? nodes[i].left
                                                          : nodes[i].right;
    }
    return nodes[i].leaf_value;
  }
};

// Boosted ensemble over channel-cell features of a fixed model window.
// score(x) = sum_t weights[t] * trees[t](x). cascade_thresholds[k] bounds
// the score any training positive reaches after k+1 trees; scan uses them
// for early rejection.
struct BoostedClassifier {
  int window_w = 0;  // model window [px]; 0 for feature-space classifiers
  int window_h = 0;
  int shrink = 4;
  int num_orientations = 6;
  std::vector<DecisionTree> trees;
  std::vector<double> weights;
  std::vector<double> cascade_thresholds;

  int cells_x() const { return window_w / shrink; }
  int cells_y() const { return window_h / shrink; }
  int feature_count() const { return (4 + num_orientations) * cells_x() * cells_y(); }

  double evaluate(const float* features) const {
    double score = 0.0;
    for (std::size_t t = 0; t < trees.size(); ++t) {
      score += weights[t] * trees[t].evaluate(features);
    }
    return score;
  }
};

struct TrainOptions {
  int rounds = 64;
  int depth = 2;             // 1 = stumps, 2 = two-level trees
  std::uint64_t seed = 0;    // reserved for sampling strategies; training
                             // itself is deterministic
};

// Discrete AdaBoost on raw feature vectors (all vectors the same length).
// Each tree node is picked by exhaustive search over (feature, threshold)
// minimizing the weighted classification error; candidate thresholds are
// the midpoints between consecutive distinct feature values, and ties keep
// the first candidate in (feature, threshold) order. Training stops early
// when no weak learner beats 0.5 or when one reaches zero error.
BoostedClassifier train_on_features(const std::vector<std::vector<float>>& positives,
                                    const std::vector<std::vector<float>>& negatives,
                                    const TrainOptions& options = {});

// Same, but samples are window-sized images run through compute_channels.
// All images must share the model window size.
BoostedClassifier train(const std::vector<Image8>& positives,
                        const std::vector<Image8>& negatives,
                        const TrainOptions& options = {},
                        const ChannelConfig& channel_config = {});

// Flattens a model-window channel stack into the feature layout trees index.
std::vector<float> flatten_features(const ChannelStack& stack);

}  // namespace monofcw
