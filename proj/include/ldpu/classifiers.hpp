// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serialized classifiers evaluated behind a pure black-box predict() interface.
// Kinds: Linear (one affine score per class), QDA (per-class quadratic
// discriminant), TreeEnsemble (majority vote over axis-aligned decision trees;
// a point goes left when point[feature] < threshold), and MLP (affine layers
// with ReLU between all but the last). Labels are 1-based; ties break toward
// the smallest class index.

#pragma once

#include <string>
#include <vector>

#include "ldpu/errors.hpp"

namespace ldpu {

enum class ModelKind { Linear, QDA, TreeEnsemble, MLP };

std::string model_kind_name(ModelKind kind);

struct LinearHead {
  std::vector<double> weights;  // length = dimension
  double bias = 0.0;
};

struct QdaClassParams {
  std::vector<std::vector<double>> quadratic;  // dimension x dimension
  std::vector<double> linear;                  // length = dimension
  double constant = 0.0;
};

// Internal node: feature >= 0, threshold in [0,1], left/right node indices.
// Leaf: feature == -1, leaf_class in 1..num_classes. Node 0 is the root.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int leaf_class = -1;
};

struct Tree {
  std::vector<TreeNode> nodes;
};

struct AffineLayer {
  std::vector<std::vector<double>> matrix;  // rows = outputs, cols = inputs
  std::vector<double> bias;
};

struct Prediction {
  int label = 0;               // 1..num_classes
  std::vector<double> scores;  // per-class scores (vote counts for ensembles)
};

class ClassifierModel {
 public:
  ModelKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  int num_classes() const { return num_classes_; }

  // Deterministic, side-effect-free label for a point in [0,1]^d.
  Prediction predict(const std::vector<double>& point) const;

  const std::vector<LinearHead>& linear_heads() const { return linear_; }
  const std::vector<QdaClassParams>& qda_classes() const { return qda_; }
  const std::vector<Tree>& trees() const { return trees_; }
  const std::vector<AffineLayer>& layers() const { return layers_; }

  static ClassifierModel make_linear(int dimension, std::vector<LinearHead> heads);
  static ClassifierModel make_qda(int dimension, std::vector<QdaClassParams> classes);
  static ClassifierModel make_tree_ensemble(int dimension, int num_classes, std::vector<Tree> trees);
  static ClassifierModel make_mlp(int dimension, std::vector<AffineLayer> layers);

 private:
  ClassifierModel() = default;
  void validate() const;

  ModelKind kind_ = ModelKind::Linear;
  int dimension_ = 0;
  int num_classes_ = 0;
  std::vector<LinearHead> linear_;
  std::vector<QdaClassParams> qda_;
  std::vector<Tree> trees_;
  std::vector<AffineLayer> layers_;
};

// JSON (de)serialization; numbers survive a save/load round trip bit-exactly.
ClassifierModel load_model(const std::string& path);
void save_model(const ClassifierModel& model, const std::string& path);
std::string model_to_json(const ClassifierModel& model);
ClassifierModel model_from_json(const std::string& json_text);

// Fixture models with explicit weights.
ClassifierModel fixture_nn_2d();       // 2-2-2 ReLU network
ClassifierModel fixture_qda_2d();      // two-class QDA; boundary is a circle
ClassifierModel fixture_step_1d();     // one tree; class 1 exactly on [0.2, 0.8)
ClassifierModel fixture_linear_2d();   // boundary at x0 = 0.5
ClassifierModel fixture_forest_2d();   // 3-tree majority vote

// Exact l2 distance from a point to the QDA fixture's circular boundary;
// theta / sqrt(2) is a valid l-infinity lower bound.
double qda_radius_closed_form(double u, double v);

}  // namespace ldpu
