// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#include "ldpu/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ldpu {

namespace {

using nlohmann::json;

int argmax_label(const std::vector<double>& scores) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(scores.size()); ++k) {
    if (scores[k] > scores[best]) best = k;  // strict: ties keep the smallest index
  }
  return best + 1;
}

void check_point(const ClassifierModel& model, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != model.dimension()) {
    throw ValidationError("point has dimension " + std::to_string(point.size()) +
                          ", model expects " + std::to_string(model.dimension()));
  }
}

int tree_leaf(const Tree& tree, const std::vector<double>& point) {
  int node = 0;
  for (std::size_t step = 0; step <= tree.nodes.size(); ++step) {
    const TreeNode& n = tree.nodes[node];
    if (n.feature < 0) return n.leaf_class;
    node = point[n.feature] < n.threshold ? n.left : n.right;
  }
  throw ComputationError("tree traversal did not reach a leaf");
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Linear: return "linear";
    case ModelKind::QDA: return "qda";
    case ModelKind::TreeEnsemble: return "tree_ensemble";
    case ModelKind::MLP: return "mlp";
  }
  return "unknown";
}

void ClassifierModel::validate() const {
  if (dimension_ < 1) throw ValidationError("dimension must be >= 1");
  if (num_classes_ < 2) throw ValidationError("num_classes must be >= 2");
  switch (kind_) {
    case ModelKind::Linear: {
      if (linear_.size() != static_cast<std::size_t>(num_classes_)) {
        throw ValidationError("linear weights: expected one head per class");
      }
      for (const LinearHead& h : linear_) {
        if (h.weights.size() != static_cast<std::size_t>(dimension_)) {
          throw ValidationError("linear weights: head weight length != dimension");
        }
      }
      break;
    }
    case ModelKind::QDA: {
      if (qda_.size() != static_cast<std::size_t>(num_classes_)) {
        throw ValidationError("qda weights: expected one discriminant per class");
      }
      for (const QdaClassParams& c : qda_) {
        if (c.quadratic.size() != static_cast<std::size_t>(dimension_)) {
          throw ValidationError("qda quadratic: expected dimension rows");
        }
        for (const auto& row : c.quadratic) {
          if (row.size() != static_cast<std::size_t>(dimension_)) {
            throw ValidationError("qda quadratic: expected dimension columns");
          }
        }
        if (c.linear.size() != static_cast<std::size_t>(dimension_)) {
          throw ValidationError("qda linear: expected dimension entries");
        }
      }
      break;
    }
    case ModelKind::TreeEnsemble: {
      if (trees_.empty()) throw ValidationError("trees: ensemble must contain at least one tree");
      for (const Tree& tree : trees_) {
        if (tree.nodes.empty()) throw ValidationError("trees: tree has no nodes");
        const int n = static_cast<int>(tree.nodes.size());
        std::vector<char> visited(tree.nodes.size(), 0);
        std::vector<int> stack{0};
        while (!stack.empty()) {
          const int idx = stack.back();
          stack.pop_back();
          if (idx < 0 || idx >= n) throw ValidationError("trees: node index out of range");
          if (visited[idx]) throw ValidationError("trees: node reachable twice (cycle or shared subtree)");
          visited[idx] = 1;
          const TreeNode& node = tree.nodes[idx];
          if (node.feature < 0) {
            if (node.leaf_class < 1 || node.leaf_class > num_classes_) {
              throw ValidationError("trees: leaf class " + std::to_string(node.leaf_class) +
                                    " outside 1.." + std::to_string(num_classes_));
            }
          } else {
            if (node.feature >= dimension_) {
              throw ValidationError("trees: feature index " + std::to_string(node.feature) +
                                    " >= dimension " + std::to_string(dimension_));
            }
            if (!(node.threshold >= 0.0 && node.threshold <= 1.0)) {
              throw ValidationError("trees: threshold must lie in [0, 1]");
            }
            stack.push_back(node.left);
            stack.push_back(node.right);
          }
        }
      }
      break;
    }
    case ModelKind::MLP: {
      if (layers_.empty()) throw ValidationError("layers: MLP needs at least one layer");
      std::size_t width = static_cast<std::size_t>(dimension_);
      for (const AffineLayer& layer : layers_) {
        if (layer.matrix.empty()) throw ValidationError("layers: empty weight matrix");
        if (layer.bias.size() != layer.matrix.size()) {
          throw ValidationError("layers: bias length != matrix rows");
        }
        for (const auto& row : layer.matrix) {
          if (row.size() != width) {
            throw ValidationError("layers: matrix columns do not match previous layer width");
          }
        }
        width = layer.matrix.size();
      }
      if (width != static_cast<std::size_t>(num_classes_)) {
        throw ValidationError("layers: final layer rows != num_classes");
      }
      break;
    }
  }
}

ClassifierModel ClassifierModel::make_linear(int dimension, std::vector<LinearHead> heads) {
  ClassifierModel m;
  m.kind_ = ModelKind::Linear;
  m.dimension_ = dimension;
  m.num_classes_ = static_cast<int>(heads.size());
  m.linear_ = std::move(heads);
  m.validate();
  return m;
}

ClassifierModel ClassifierModel::make_qda(int dimension, std::vector<QdaClassParams> classes) {
  ClassifierModel m;
  m.kind_ = ModelKind::QDA;
  m.dimension_ = dimension;
  m.num_classes_ = static_cast<int>(classes.size());
  m.qda_ = std::move(classes);
  m.validate();
  return m;
}

ClassifierModel ClassifierModel::make_tree_ensemble(int dimension, int num_classes,
                                                    std::vector<Tree> trees) {
  ClassifierModel m;
  m.kind_ = ModelKind::TreeEnsemble;
  m.dimension_ = dimension;
  m.num_classes_ = num_classes;
  m.trees_ = std::move(trees);
  m.validate();
  return m;
}

ClassifierModel ClassifierModel::make_mlp(int dimension, std::vector<AffineLayer> layers) {
  ClassifierModel m;
  m.kind_ = ModelKind::MLP;
  m.dimension_ = dimension;
  m.num_classes_ = layers.empty() ? 0 : static_cast<int>(layers.back().matrix.size());
  m.layers_ = std::move(layers);
  m.validate();
  return m;
}

Prediction ClassifierModel::predict(const std::vector<double>& point) const {
  check_point(*this, point);
  Prediction out;
  switch (kind_) {
    case ModelKind::Linear: {
      out.scores.reserve(linear_.size());
      for (const LinearHead& h : linear_) {
        double s = h.bias;
        for (int i = 0; i < dimension_; ++i) s += h.weights[i] * point[i];
        out.scores.push_back(s);
      }
      break;
    }
    case ModelKind::QDA: {
      out.scores.reserve(qda_.size());
      for (const QdaClassParams& c : qda_) {
        double s = c.constant;
        for (int i = 0; i < dimension_; ++i) {
          s += c.linear[i] * point[i];
          for (int j = 0; j < dimension_; ++j) s += point[i] * c.quadratic[i][j] * point[j];
        }
        out.scores.push_back(s);
      }
      break;
    }
    case ModelKind::TreeEnsemble: {
      out.scores.assign(num_classes_, 0.0);
      for (const Tree& tree : trees_) {
        out.scores[tree_leaf(tree, point) - 1] += 1.0;
      }
      break;
    }
    case ModelKind::MLP: {
      std::vector<double> act = point;
      for (std::size_t li = 0; li < layers_.size(); ++li) {
        const AffineLayer& layer = layers_[li];
        std::vector<double> next(layer.matrix.size());
        for (std::size_t r = 0; r < layer.matrix.size(); ++r) {
          double s = layer.bias[r];
          for (std::size_t c = 0; c < act.size(); ++c) s += layer.matrix[r][c] * act[c];
          next[r] = (li + 1 < layers_.size()) ? std::max(0.0, s) : s;
        }
        act = std::move(next);
      }
      out.scores = std::move(act);
      break;
    }
  }
  out.label = argmax_label(out.scores);
  return out;
}

// ---------------------------------------------------------------------------
// JSON serialization.
// ---------------------------------------------------------------------------

std::string model_to_json(const ClassifierModel& model) {
  json j;
  j["kind"] = model_kind_name(model.kind());
  j["dimension"] = model.dimension();
  j["num_classes"] = model.num_classes();
  switch (model.kind()) {
    case ModelKind::Linear: {
      json heads = json::array();
      for (const LinearHead& h : model.linear_heads()) {
        heads.push_back({{"weights", h.weights}, {"bias", h.bias}});
      }
      j["weights"] = heads;
      break;
    }
    case ModelKind::QDA: {
      json classes = json::array();
      for (const QdaClassParams& c : model.qda_classes()) {
        classes.push_back({{"quadratic", c.quadratic}, {"linear", c.linear}, {"constant", c.constant}});
      }
      j["weights"] = classes;
      break;
    }
    case ModelKind::TreeEnsemble: {
      json trees = json::array();
      for (const Tree& tree : model.trees()) {
        json nodes = json::array();
        for (const TreeNode& n : tree.nodes) {
          if (n.feature < 0) {
            nodes.push_back({{"leaf", n.leaf_class}});
          } else {
            nodes.push_back(
                {{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
          }
        }
        trees.push_back({{"nodes", nodes}});
      }
      j["weights"] = {{"trees", trees}};
      break;
    }
    case ModelKind::MLP: {
      json layers = json::array();
      for (const AffineLayer& layer : model.layers()) {
        layers.push_back({{"matrix", layer.matrix}, {"bias", layer.bias}});
      }
      j["weights"] = {{"layers", layers}};
      break;
    }
  }
  return j.dump(2) + "\n";
}

ClassifierModel model_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const int dimension = j.at("dimension").get<int>();
    const int num_classes = j.at("num_classes").get<int>();
    const json& w = j.at("weights");
    if (kind == "linear") {
      std::vector<LinearHead> heads;
      for (const json& h : w) {
        heads.push_back({h.at("weights").get<std::vector<double>>(), h.at("bias").get<double>()});
      }
      if (static_cast<int>(heads.size()) != num_classes) {
        throw ValidationError("weights: head count != num_classes");
      }
      return ClassifierModel::make_linear(dimension, std::move(heads));
    }
    if (kind == "qda") {
      std::vector<QdaClassParams> classes;
      for (const json& c : w) {
        classes.push_back({c.at("quadratic").get<std::vector<std::vector<double>>>(),
                           c.at("linear").get<std::vector<double>>(), c.at("constant").get<double>()});
      }
      if (static_cast<int>(classes.size()) != num_classes) {
        throw ValidationError("weights: class count != num_classes");
      }
      return ClassifierModel::make_qda(dimension, std::move(classes));
    }
    if (kind == "tree_ensemble") {
      std::vector<Tree> trees;
      for (const json& t : w.at("trees")) {
        Tree tree;
        for (const json& n : t.at("nodes")) {
          TreeNode node;
          if (n.contains("leaf")) {
            node.leaf_class = n.at("leaf").get<int>();
          } else {
            node.feature = n.at("feature").get<int>();
            node.threshold = n.at("threshold").get<double>();
            node.left = n.at("left").get<int>();
            node.right = n.at("right").get<int>();
          }
          tree.nodes.push_back(node);
        }
        trees.push_back(std::move(tree));
      }
      return ClassifierModel::make_tree_ensemble(dimension, num_classes, std::move(trees));
    }
    if (kind == "mlp") {
      std::vector<AffineLayer> layers;
      for (const json& l : w.at("layers")) {
        layers.push_back({l.at("matrix").get<std::vector<std::vector<double>>>(),
                          l.at("bias").get<std::vector<double>>()});
      }
      ClassifierModel m = ClassifierModel::make_mlp(dimension, std::move(layers));
      if (m.num_classes() != num_classes) {
        throw ValidationError("num_classes does not match the final layer width");
      }
      if (m.dimension() != dimension) {
        throw ValidationError("dimension does not match the first layer width");
      }
      return m;
    }
    throw ValidationError("unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file does not match the schema: ") + e.what());
  }
}

ClassifierModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  const bool has_json_suffix = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (!in && !has_json_suffix) {
    in.clear();
    in.open(path + ".json", std::ios::binary);
  }
  if (!in) throw ValidationError("model file not found or unreadable: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

void save_model(const ClassifierModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ComputationError("cannot open model file for writing: " + path);
  out << model_to_json(model);
  if (!out) throw ComputationError("failed writing model file: " + path);
}

// ---------------------------------------------------------------------------
// Fixtures.
// ---------------------------------------------------------------------------

ClassifierModel fixture_nn_2d() {
  std::vector<AffineLayer> layers(2);
  layers[0].matrix = {{-1.86, -2.09}, {0.12, -0.46}};
  layers[0].bias = {3.71, -0.08};
  layers[1].matrix = {{-3.05, 0.40}, {4.02, -0.22}};
  layers[1].bias = {0.94, -0.58};
  return ClassifierModel::make_mlp(2, std::move(layers));
}

ClassifierModel fixture_qda_2d() {
  const double ln2 = std::log(2.0);
  std::vector<QdaClassParams> classes(2);
  classes[0].quadratic = {{-0.5, 0.0}, {0.0, -0.5}};
  classes[0].linear = {0.0, 0.0};
  classes[0].constant = -ln2;  // ln(0.5)
  classes[1].quadratic = {{-0.25, 0.0}, {0.0, -0.25}};
  classes[1].linear = {0.5, 0.5};
  classes[1].constant = -0.5 - 2.0 * ln2;
  return ClassifierModel::make_qda(2, std::move(classes));
}

double qda_radius_closed_form(double u, double v) {
  const double circle_radius = 2.0 * std::sqrt(std::log(2.0) + 1.0);
  return std::fabs(circle_radius - std::sqrt((u + 1.0) * (u + 1.0) + (v + 1.0) * (v + 1.0)));
}

ClassifierModel fixture_step_1d() {
  Tree tree;
  tree.nodes.resize(5);
  tree.nodes[0] = {0, 0.2, 1, 2, -1};
  tree.nodes[1] = {-1, 0.0, -1, -1, 2};
  tree.nodes[2] = {0, 0.8, 3, 4, -1};
  tree.nodes[3] = {-1, 0.0, -1, -1, 1};
  tree.nodes[4] = {-1, 0.0, -1, -1, 2};
  return ClassifierModel::make_tree_ensemble(1, 2, {tree});
}

ClassifierModel fixture_linear_2d() {
  std::vector<LinearHead> heads(2);
  heads[0] = {{-1.0, 0.0}, 0.5};  // class 1 wherever x0 <= 0.5
  heads[1] = {{1.0, 0.0}, -0.5};
  return ClassifierModel::make_linear(2, std::move(heads));
}

ClassifierModel fixture_forest_2d() {
  auto interval_tree = [](int feature, double lo, double hi) {
    Tree tree;
    tree.nodes.resize(5);
    tree.nodes[0] = {feature, lo, 1, 2, -1};
    tree.nodes[1] = {-1, 0.0, -1, -1, 2};
    tree.nodes[2] = {feature, hi, 3, 4, -1};
    tree.nodes[3] = {-1, 0.0, -1, -1, 1};
    tree.nodes[4] = {-1, 0.0, -1, -1, 2};
    return tree;
  };
  Tree third;
  third.nodes.resize(3);
  third.nodes[0] = {1, 0.9, 1, 2, -1};
  third.nodes[1] = {-1, 0.0, -1, -1, 1};
  third.nodes[2] = {-1, 0.0, -1, -1, 2};
  std::vector<Tree> trees;
  trees.push_back(interval_tree(0, 0.15, 0.9));
  trees.push_back(interval_tree(1, 0.1, 0.85));
  trees.push_back(std::move(third));
  return ClassifierModel::make_tree_ensemble(2, 2, std::move(trees));
}

}  // namespace ldpu
