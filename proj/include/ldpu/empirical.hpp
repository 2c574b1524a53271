// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Empirical validation: Monte-Carlo estimate of the probability that the
// classifier's prediction survives actual mechanism perturbation, with
// Hoeffding confidence intervals, and side-by-side theory/practice comparison
// including wall-clock timing.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldpu/quantify.hpp"

namespace ldpu {

struct EmpiricalEstimate {
  double rho_hat = 0.0;            // preserved-prediction fraction
  long n = 0;                      // sample count
  double hoeffding_halfwidth = 0;  // 95% half-width sqrt(ln(2/0.05) / (2n))
  double t_sample_ms = 0.0;        // wall time to draw the n perturbed copies
  double t_infer_ms = 0.0;         // wall time to run the n predictions
};

// Draws n perturbed copies of x (sensitive dims via the mechanism samplers,
// other dims kept fixed) and counts preserved predictions. joint_delta > 0
// applies one shared privacy indicator: with that probability the whole point
// is released unperturbed.
EmpiricalEstimate empirical_rho(const ClassifierModel& model, const std::vector<double>& x,
                                const std::vector<MechanismPtr>& mechanisms,
                                const std::vector<int>& sensitive_dims, long n,
                                std::uint64_t seed, double joint_delta = 0.0);

struct CompareRow {
  std::string family;
  double epsilon = 0.0;
  std::string theta_or_rect;
  double rho = 0.0;  // theoretical guarantee (slack included)
  std::vector<double> per_dim_probs;
  double composed_eps = 0.0;
  double composed_delta = 0.0;
  double rho_hat = 0.0;
  double halfwidth = 0.0;
  double t_sample_ms = 0.0;  // median over repetitions
  double t_infer_ms = 0.0;   // median over repetitions
  double t_theory_ms = 0.0;  // median over repetitions
  bool violation = false;    // rho > rho_hat + halfwidth
};

struct CompareOptions {
  long n = 2000;
  int timing_reps = 10;
  double omega = 0.05;
  double tau = 0.02;
  bool include_slack = true;
  double delta = 0.0;  // gaussian delta / indicator wrap for pure families
  int k = 100;
};

// One row per (family, epsilon): theoretical rho over rect, empirical rho_hat
// with Hoeffding half-width, lower-bound violation flag, and median timings.
std::vector<CompareRow> compare(const ClassifierModel& model, const std::vector<double>& x,
                                const std::vector<std::string>& families,
                                const std::vector<double>& eps_grid, const Hyperrectangle& rect,
                                std::uint64_t seed, const CompareOptions& options = {});

}  // namespace ldpu
