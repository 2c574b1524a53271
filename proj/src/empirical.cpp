// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#include "ldpu/empirical.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace ldpu {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

EmpiricalEstimate empirical_rho(const ClassifierModel& model, const std::vector<double>& x,
                                const std::vector<MechanismPtr>& mechanisms,
                                const std::vector<int>& sensitive_dims, long n,
                                std::uint64_t seed, double joint_delta) {
  if (n < 1) throw ValidationError("sample count n must be >= 1");
  if (static_cast<int>(x.size()) != model.dimension()) {
    throw ValidationError("anchor point dimension does not match the model");
  }
  if (mechanisms.size() != sensitive_dims.size() || sensitive_dims.empty()) {
    throw ValidationError("mechanisms must be assigned exactly to sensitive_dims");
  }
  for (int dim : sensitive_dims) {
    if (dim < 0 || dim >= static_cast<int>(x.size())) {
      throw ValidationError("sensitive dimension index " + std::to_string(dim) + " out of range");
    }
  }
  if (joint_delta != 0.0 && !(joint_delta > 0.0 && joint_delta < 1.0)) {
    throw ValidationError("joint_delta must lie in (0, 1) when set");
  }

  const int anchor_label = model.predict(x).label;
  Rng rng = Rng(seed).substream(0x5abe);

  EmpiricalEstimate out;
  out.n = n;
  out.hoeffding_halfwidth = std::sqrt(std::log(2.0 / 0.05) / (2.0 * static_cast<double>(n)));

  // Sampling pass.
  std::vector<std::vector<double>> perturbed(static_cast<std::size_t>(n), x);
  const auto t0 = Clock::now();
  for (auto& point : perturbed) {
    if (joint_delta > 0.0 && rng.uniform01() < joint_delta) continue;  // release x unchanged
    for (std::size_t i = 0; i < sensitive_dims.size(); ++i) {
      point[sensitive_dims[i]] = mechanisms[i]->sample(x[sensitive_dims[i]], rng);
    }
  }
  out.t_sample_ms = ms_since(t0);

  // Inference pass.
  const auto t1 = Clock::now();
  long preserved = 0;
  for (const auto& point : perturbed) {
    if (model.predict(point).label == anchor_label) ++preserved;
  }
  out.t_infer_ms = ms_since(t1);

  out.rho_hat = static_cast<double>(preserved) / static_cast<double>(n);
  return out;
}

std::vector<CompareRow> compare(const ClassifierModel& model, const std::vector<double>& x,
                                const std::vector<std::string>& families,
                                const std::vector<double>& eps_grid, const Hyperrectangle& rect,
                                std::uint64_t seed, const CompareOptions& options) {
  if (families.empty() || eps_grid.empty()) return {};
  if (options.timing_reps < 1) throw ValidationError("timing_reps must be >= 1");
  if (rect.dims.size() != x.size()) {
    throw ValidationError("hyperrectangle dimension does not match the anchor point");
  }

  std::vector<int> all_dims;
  for (std::size_t i = 0; i < x.size(); ++i) all_dims.push_back(static_cast<int>(i));

  std::string rect_text;
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < rect.dims.size(); ++i) {
      if (i) os << '|';
      os << rect.dims[i].lo << ".." << rect.dims[i].hi;
    }
    rect_text = os.str();
  }

  std::vector<CompareRow> rows;
  for (const std::string& family : families) {
    for (double eps : eps_grid) {
      const MechanismPtr mech = make_family_mechanism(family, eps, options.delta, options.k);
      std::vector<MechanismPtr> mechs(x.size(), mech);

      UtilityQuery query;
      query.model = &model;
      query.x = x;
      query.sensitive_dims = all_dims;
      query.mechanisms = mechs;
      query.rect = rect;
      query.omega = options.omega;
      query.tau = options.tau;
      query.include_slack = options.include_slack;

      CompareRow row;
      row.family = family;
      row.epsilon = eps;
      row.theta_or_rect = rect_text;

      std::vector<double> t_theory, t_sample, t_infer;
      UtilityReport report;
      EmpiricalEstimate estimate;
      for (int rep = 0; rep < options.timing_reps; ++rep) {
        const auto t0 = Clock::now();
        report = rho(query);
        t_theory.push_back(ms_since(t0));
        estimate = empirical_rho(model, x, mechs, all_dims, options.n,
                                 seed + static_cast<std::uint64_t>(rep));
        t_sample.push_back(estimate.t_sample_ms);
        t_infer.push_back(estimate.t_infer_ms);
      }
      // Values from the final repetition; timings as medians across repetitions.
      row.rho = report.rho;
      row.per_dim_probs = report.per_dim_probs;
      row.composed_eps = report.composed.epsilon;
      row.composed_delta = report.composed.delta;
      row.rho_hat = estimate.rho_hat;
      row.halfwidth = estimate.hoeffding_halfwidth;
      row.t_theory_ms = median(t_theory);
      row.t_sample_ms = median(t_sample);
      row.t_infer_ms = median(t_infer);
      row.violation = row.rho > row.rho_hat + row.halfwidth;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace ldpu
