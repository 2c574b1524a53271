// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#include "ldpu/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ldpu {

namespace {

constexpr double kTol = 1e-12;

// Reserved stream ids; test streams used inside the search loops stay clear of
// these so the final soundness check never reuses points seen during search.
constexpr std::uint64_t kExpansionStreamBase = 1u << 20;
constexpr std::uint64_t kFinalCheckStream = ~0ull - 7;

void check_config(const RobustnessConfig& config) {
  if (!(config.tau > 0.0 && config.tau < 1.0)) throw ValidationError("tau must lie in (0, 1)");
  if (!(config.omega > 0.0 && config.omega < 1.0)) throw ValidationError("omega must lie in (0, 1)");
  if (!(config.kappa > 0.0)) throw ValidationError("kappa must be positive");
  if (config.max_expand_passes < 1) throw ValidationError("max_expand_passes must be >= 1");
}

Hyperrectangle clip_box(const std::vector<double>& center, double half_width) {
  Hyperrectangle rect;
  rect.dims.reserve(center.size());
  for (double c : center) {
    rect.dims.push_back({std::max(0.0, c - half_width), std::min(1.0, c + half_width)});
  }
  return rect;
}

}  // namespace

Hyperrectangle Hyperrectangle::box(const std::vector<double>& center, double half_width) {
  return clip_box(center, half_width);
}

bool Hyperrectangle::contains(const std::vector<double>& point, double tol) const {
  if (point.size() != dims.size()) return false;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (point[i] < dims[i].lo - tol || point[i] > dims[i].hi + tol) return false;
  }
  return true;
}

long hoeffding_sample_size(double omega, double tau) {
  if (!(omega > 0.0 && omega < 1.0)) throw ValidationError("omega must lie in (0, 1)");
  if (!(tau > 0.0)) throw ValidationError("tau must be positive");
  return static_cast<long>(std::ceil(std::log(2.0 / omega) / (2.0 * tau * tau)));
}

RobustnessVerdict test_region(const ClassifierModel& model, const std::vector<double>& x,
                              const Hyperrectangle& region, const RobustnessConfig& config,
                              std::uint64_t stream_id) {
  check_config(config);
  if (static_cast<int>(x.size()) != model.dimension()) {
    throw ValidationError("anchor point dimension does not match the model");
  }
  if (region.dims.size() != x.size()) {
    throw ValidationError("region dimension does not match the anchor point");
  }
  if (!region.contains(x)) throw ValidationError("anchor point lies outside the region");

  const long n = hoeffding_sample_size(config.omega, config.tau / 2.0);
  const int anchor_label = model.predict(x).label;
  Rng rng = Rng(config.seed).substream(stream_id);

  long misclassified = 0;
  std::vector<double> point(x.size());
  for (long s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < point.size(); ++i) {
      point[i] = rng.uniform(region.dims[i].lo, region.dims[i].hi);
    }
    if (model.predict(point).label != anchor_label) ++misclassified;
  }

  RobustnessVerdict verdict;
  verdict.samples_used = n;
  verdict.misclass_rate = static_cast<double>(misclassified) / static_cast<double>(n);
  verdict.accepted = verdict.misclass_rate <= config.tau / 2.0 + kTol;
  return verdict;
}

double find_radius(const ClassifierModel& model, const std::vector<double>& x,
                   const RobustnessConfig& config) {
  check_config(config);
  // The full-domain box saturates the search at the domain bound.
  if (test_region(model, x, clip_box(x, 1.0), config, 0).accepted) return 1.0;

  double lo = 0.0;  // largest accepted midpoint so far; theta = 0 always holds
  double hi = 1.0;
  std::uint64_t stream = 1;
  while (hi - lo > config.kappa) {
    const double mid = 0.5 * (lo + hi);
    if (test_region(model, x, clip_box(x, mid), config, stream++).accepted) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Hyperrectangle expand_hyperrectangle(const ClassifierModel& model, const std::vector<double>& x,
                                     double theta, const RobustnessConfig& config) {
  check_config(config);
  Hyperrectangle rect = clip_box(x, theta);
  const std::size_t d = rect.dims.size();
  std::uint64_t stream = kExpansionStreamBase;

  for (int pass = 0; pass < config.max_expand_passes; ++pass) {
    for (std::size_t dim = 0; dim < d; ++dim) {
      for (int side = 0; side < 2; ++side) {  // 0 = lower face, 1 = upper face
        double step = 4.0 * config.kappa;
        while (step >= config.kappa - kTol) {
          Hyperrectangle candidate = rect;
          double& edge = side == 0 ? candidate.dims[dim].lo : candidate.dims[dim].hi;
          double moved = side == 0 ? std::max(0.0, edge - step) : std::min(1.0, edge + step);
          // Snap away float dust so faces land exactly on the domain bounds.
          if (moved < kTol) moved = 0.0;
          if (moved > 1.0 - kTol) moved = 1.0;
          if (std::fabs(moved - edge) <= kTol) break;  // face already at the domain bound
          edge = moved;
          if (test_region(model, x, candidate, config, stream++).accepted) {
            rect = candidate;  // keep the current step while the face advances
          } else {
            step *= 0.5;
          }
        }
      }
    }
  }

  // Soundness: the returned rectangle must pass a fresh-seed test. On the rare
  // borderline rejection, shrink every face by kappa (never below the initial
  // theta-box) and retest.
  const Hyperrectangle initial = clip_box(x, theta);
  std::uint64_t final_stream = kFinalCheckStream;
  while (!test_region(model, x, rect, config, final_stream).accepted) {
    bool shrunk = false;
    for (std::size_t dim = 0; dim < d; ++dim) {
      const double lo = std::min(rect.dims[dim].lo + config.kappa, initial.dims[dim].lo);
      const double hi = std::max(rect.dims[dim].hi - config.kappa, initial.dims[dim].hi);
      shrunk = shrunk || lo != rect.dims[dim].lo || hi != rect.dims[dim].hi;
      rect.dims[dim].lo = lo;
      rect.dims[dim].hi = hi;
    }
    ++final_stream;
    if (!shrunk) break;  // back to the accepted theta-box
  }
  return rect;
}

double BoundaryCells::min_linf_distance(const std::vector<double>& point) const {
  if (point.size() != 2) throw ValidationError("boundary oracle distance expects a 2D point");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [ci, cj] : cells) {
    const double lo_u = ci * resolution, hi_u = (ci + 1) * resolution;
    const double lo_v = cj * resolution, hi_v = (cj + 1) * resolution;
    const double du = std::max({lo_u - point[0], point[0] - hi_u, 0.0});
    const double dv = std::max({lo_v - point[1], point[1] - hi_v, 0.0});
    best = std::min(best, std::max(du, dv));
  }
  return best;
}

BoundaryCells boundary_oracle_2d(const ClassifierModel& model, double resolution) {
  if (model.dimension() != 2) throw ValidationError("boundary oracle requires a 2D model");
  if (!(resolution > 0.0 && resolution <= 0.5)) {
    throw ValidationError("resolution must lie in (0, 0.5]");
  }
  const int n = static_cast<int>(std::lround(1.0 / resolution));

  // Labels at all (n+1)^2 grid corners, one row at a time.
  std::vector<int> prev_row(n + 1), row(n + 1);
  BoundaryCells out;
  out.resolution = resolution;
  std::vector<double> point(2);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      point[0] = std::min(1.0, i * resolution);
      point[1] = std::min(1.0, j * resolution);
      row[i] = model.predict(point).label;
    }
    if (j > 0) {
      for (int i = 0; i < n; ++i) {
        const int a = prev_row[i], b = prev_row[i + 1], c = row[i], d = row[i + 1];
        if (a != b || a != c || a != d) out.cells.emplace_back(i, j - 1);
      }
    }
    std::swap(prev_row, row);
  }
  return out;
}

}  // namespace ldpu
