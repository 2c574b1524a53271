// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Theoretical utility quantification: combines per-dimension mechanism
// concentration probabilities over a robustness hyperrectangle into the
// guarantee rho, selects the smallest epsilon meeting a target utility, and
// sweeps mechanism families over (epsilon, theta) grids.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldpu/classifiers.hpp"
#include "ldpu/mechanisms.hpp"
#include "ldpu/robustness.hpp"

namespace ldpu {

struct UtilityQuery {
  const ClassifierModel* model = nullptr;  // optional; used only for the statement text
  std::vector<double> x;                   // anchor point, one entry per model dimension
  std::vector<int> sensitive_dims;         // 0-based dimension indices, non-empty
  std::vector<MechanismPtr> mechanisms;    // aligned with sensitive_dims
  Hyperrectangle rect;                     // per-dimension robust intervals (all dims)
  double omega = 0.05;
  double tau = 0.02;
  bool include_slack = false;              // multiply by (1 - omega)(1 - tau)
  double joint_delta = 0.0;                // > 0: one shared privacy indicator over all dims
};

struct UtilityReport {
  double rho = 0.0;
  std::vector<double> per_dim_probs;  // one entry per sensitive dimension
  double slack_factor = 1.0;
  PrivacyParams composed;             // sequential composition over sensitive dims
  std::string statement;
};

UtilityReport rho(const UtilityQuery& query);

struct SweepRow {
  std::string family;
  double epsilon = 0.0;
  std::string theta_or_rect;
  double rho = 0.0;
  std::vector<double> per_dim_probs;
  double composed_eps = 0.0;
  double composed_delta = 0.0;
  bool best = false;  // argmax family within the same (epsilon, theta) cell
};

// rho per (family, epsilon, theta) for boxes x +- theta clipped to [0,1]^d;
// slack off, so rows expose the pure concentration product.
std::vector<SweepRow> sweep(const std::vector<std::string>& families,
                            const std::vector<double>& eps_grid,
                            const std::vector<double>& theta_grid, const std::vector<double>& x);

struct EpsilonSelection {
  double epsilon = 0.0;
  double rho_at_epsilon = 0.0;
};

// Smallest epsilon in [eps_lo, eps_hi] with rho(eps) >= target, found by
// bisection to absolute precision 1e-3 after a 16-point monotonicity probe.
// make_mechanism builds the family's mechanism for a candidate epsilon; the
// same mechanism is applied to every dimension of rect.
EpsilonSelection select_epsilon(const std::function<MechanismPtr(double)>& make_mechanism,
                                double target, const std::vector<double>& x,
                                const Hyperrectangle& rect, double eps_lo, double eps_hi,
                                bool include_slack = false, double omega = 0.05, double tau = 0.02);

// Convenience overload: family by name ("laplace", "pm", "sw", "krr",
// "exponential", "gaussian"), with fixed delta / grid size where applicable.
EpsilonSelection select_epsilon(const std::string& family, double target,
                                const std::vector<double>& x, const Hyperrectangle& rect,
                                double eps_lo, double eps_hi, double delta = 0.0, int k = 100);

}  // namespace ldpu
