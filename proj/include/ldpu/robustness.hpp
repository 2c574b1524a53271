// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Black-box probabilistic robustness analysis: Hoeffding sample sizing, region
// robustness testing, binary-search robustness radius, greedy hyperrectangle
// expansion, and a brute-force 2D boundary oracle for validation.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ldpu/classifiers.hpp"
#include "ldpu/rng.hpp"

namespace ldpu {

struct RobustnessConfig {
  double tau = 0.02;        // misclassification tolerance in (0,1)
  double omega = 0.05;      // confidence failure probability in (0,1)
  double kappa = 0.01;      // radius precision
  std::uint64_t seed = 0;   // RNG seed
  int max_expand_passes = 3;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Hyperrectangle {
  std::vector<Interval> dims;

  static Hyperrectangle box(const std::vector<double>& center, double half_width);
  bool contains(const std::vector<double>& point, double tol = 1e-12) const;
};

struct RobustnessVerdict {
  bool accepted = false;
  double misclass_rate = 0.0;
  long samples_used = 0;
};

// Smallest n with Hoeffding deviation tau at confidence 1 - omega:
// ceil(ln(2/omega) / (2 tau^2)).
long hoeffding_sample_size(double omega, double tau);

// Draws n(omega, tau/2) uniform points from the region (a fresh substream of
// config.seed identified by stream_id), queries the model, and accepts when the
// misclassification rate is <= tau/2.
RobustnessVerdict test_region(const ClassifierModel& model, const std::vector<double>& x,
                              const Hyperrectangle& region, const RobustnessConfig& config,
                              std::uint64_t stream_id = 0);

// Binary search on theta in [0,1] to precision kappa; each tested theta uses a
// fresh substream; returns the largest accepted midpoint (0 if everything
// fails, 1 if the full domain box is accepted).
double find_radius(const ClassifierModel& model, const std::vector<double>& x,
                   const RobustnessConfig& config);

// Starts from the theta-box clipped to [0,1]^d and greedily pushes each face
// outward (dimension order, lower face before upper), step 4*kappa halved to
// kappa on rejection, for at most max_expand_passes passes; the result always
// passes a final fresh-seed test_region.
Hyperrectangle expand_hyperrectangle(const ClassifierModel& model, const std::vector<double>& x,
                                     double theta, const RobustnessConfig& config);

// Grid scan over [0,1]^2 at the given resolution; a cell is a boundary cell if
// its four corner labels disagree.
struct BoundaryCells {
  double resolution = 0.0;
  std::vector<std::pair<int, int>> cells;  // lower-left corner indices

  // l-infinity distance from the point to the nearest boundary cell (as a
  // closed square), +infinity when no boundary exists.
  double min_linf_distance(const std::vector<double>& point) const;
};

BoundaryCells boundary_oracle_2d(const ClassifierModel& model, double resolution);

}  // namespace ldpu
