// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#include "ldpu/quantify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ldpu {

namespace {

constexpr double kTol = 1e-12;
constexpr double kEpsPrecision = 1e-3;
constexpr int kProbePoints = 16;

std::string format_double(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string render_statement(const UtilityReport& report, std::size_t num_dims, double joint_delta) {
  std::ostringstream os;
  os << "With probability at least " << format_double(report.rho)
     << ", the classifier preserves the correct classification result under the perturbed input ("
     << num_dims << (num_dims == 1 ? " sensitive dimension" : " sensitive dimensions") << "). ";
  if (report.composed.delta > 0.0 || joint_delta > 0.0) {
    os << "Combined privacy: (" << format_double(report.composed.epsilon, 3) << ", "
       << format_double(report.composed.delta, 3) << ")-PAC LDP.";
  } else {
    os << "Combined privacy: " << format_double(report.composed.epsilon, 3) << "-LDP.";
  }
  return os.str();
}

}  // namespace

UtilityReport rho(const UtilityQuery& query) {
  if (query.sensitive_dims.empty()) throw ValidationError("sensitive_dims must be non-empty");
  if (query.sensitive_dims.size() != query.mechanisms.size()) {
    throw ValidationError("mechanisms must be assigned exactly to sensitive_dims");
  }
  if (query.rect.dims.size() != query.x.size()) {
    throw ValidationError("hyperrectangle dimension does not match the anchor point");
  }
  for (int dim : query.sensitive_dims) {
    if (dim < 0 || dim >= static_cast<int>(query.x.size())) {
      throw ValidationError("sensitive dimension index " + std::to_string(dim) + " out of range");
    }
    if (query.x[dim] < query.rect.dims[dim].lo - kTol || query.x[dim] > query.rect.dims[dim].hi + kTol) {
      throw ValidationError("anchor point lies outside the hyperrectangle on dimension " +
                            std::to_string(dim));
    }
  }
  if (query.joint_delta != 0.0 && !(query.joint_delta > 0.0 && query.joint_delta < 1.0)) {
    throw ValidationError("joint_delta must lie in (0, 1) when set");
  }

  UtilityReport report;
  double inner = 1.0;
  double composed_eps = 0.0;
  double keep_all = 1.0;  // product of (1 - delta_i) across dimensions
  for (std::size_t i = 0; i < query.sensitive_dims.size(); ++i) {
    const MechanismPtr& mech = query.mechanisms[i];
    if (!mech) throw ValidationError("null mechanism");
    if (query.joint_delta > 0.0 && !mech->is_pure()) {
      throw ValidationError("a joint privacy indicator requires pure-LDP per-dimension mechanisms");
    }
    const int dim = query.sensitive_dims[i];
    const double p =
        mech->interval_probability(query.x[dim], query.rect.dims[dim].lo, query.rect.dims[dim].hi).value;
    report.per_dim_probs.push_back(p);
    inner *= p;
    composed_eps += mech->params().epsilon;
    keep_all *= 1.0 - mech->params().delta;
  }

  report.slack_factor = query.include_slack ? (1.0 - query.omega) * (1.0 - query.tau) : 1.0;
  if (query.joint_delta > 0.0) {
    report.rho = query.joint_delta + (1.0 - query.joint_delta) * inner * report.slack_factor;
    report.composed = {composed_eps, query.joint_delta};
  } else {
    report.rho = inner * report.slack_factor;
    report.composed = {composed_eps, 1.0 - keep_all};
  }
  report.statement = render_statement(report, query.sensitive_dims.size(), query.joint_delta);
  return report;
}

namespace {

// rho with the same mechanism on every dimension of rect, slack optional.
double rho_uniform(const MechanismPtr& mech, const std::vector<double>& x,
                   const Hyperrectangle& rect, bool include_slack, double omega, double tau) {
  UtilityQuery q;
  q.x = x;
  q.rect = rect;
  q.omega = omega;
  q.tau = tau;
  q.include_slack = include_slack;
  for (std::size_t i = 0; i < x.size(); ++i) {
    q.sensitive_dims.push_back(static_cast<int>(i));
    q.mechanisms.push_back(mech);
  }
  return rho(q).rho;
}

}  // namespace

EpsilonSelection select_epsilon(const std::function<MechanismPtr(double)>& make_mechanism,
                                double target, const std::vector<double>& x,
                                const Hyperrectangle& rect, double eps_lo, double eps_hi,
                                bool include_slack, double omega, double tau) {
  if (!(target >= 0.0 && target < 1.0)) throw ValidationError("target must lie in [0, 1)");
  if (!(eps_lo > 0.0 && eps_lo < eps_hi)) throw ValidationError("need 0 < eps_lo < eps_hi");
  if (rect.dims.size() != x.size()) {
    throw ValidationError("hyperrectangle dimension does not match the anchor point");
  }

  const auto eval = [&](double eps) {
    return rho_uniform(make_mechanism(eps), x, rect, include_slack, omega, tau);
  };

  // k-RR with an interval covering its whole grid has rho identically 1;
  // epsilon has no effect, so selection is rejected instead of silently solved.
  {
    const MechanismPtr probe_mech = make_mechanism(eps_lo);
    if (probe_mech->family() == Family::KRR) {
      const int k = probe_mech->grid_size();
      for (const Interval& dim : rect.dims) {
        const int jlo = static_cast<int>(std::ceil(dim.lo * (k - 1) - 1e-9));
        const int jhi = static_cast<int>(std::floor(dim.hi * (k - 1) + 1e-9));
        if (jlo <= 0 && jhi >= k - 1) {
          throw ComputationError(
              "unsupported configuration: the k-RR interval covers the entire grid "
              "(half-width >= 0.5), so rho does not depend on epsilon");
        }
      }
    }
  }

  // Monotonicity probe before trusting bisection.
  double prev = -1.0;
  double prev_eps = 0.0;
  for (int j = 0; j < kProbePoints; ++j) {
    const double eps = eps_lo + (eps_hi - eps_lo) * j / (kProbePoints - 1);
    const double value = eval(eps);
    if (j > 0 && value < prev - kTol) {
      std::ostringstream os;
      os << "unsupported configuration: rho is not monotone in epsilon (rho(" << prev_eps
         << ") = " << prev << " > rho(" << eps << ") = " << value << ")";
      throw ComputationError(os.str());
    }
    prev = value;
    prev_eps = eps;
  }

  if (eval(eps_hi) < target) {
    std::ostringstream os;
    os << "infeasible target: rho(" << eps_hi << ") = " << eval(eps_hi) << " < " << target;
    throw ComputationError(os.str());
  }

  if (eval(eps_lo) >= target) return {eps_lo, eval(eps_lo)};

  double lo = eps_lo, hi = eps_hi;  // invariant: rho(lo) < target <= rho(hi)
  while (hi - lo > kEpsPrecision) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, eval(hi)};
}

EpsilonSelection select_epsilon(const std::string& family, double target,
                                const std::vector<double>& x, const Hyperrectangle& rect,
                                double eps_lo, double eps_hi, double delta, int k) {
  return select_epsilon(
      [&](double eps) { return make_family_mechanism(family, eps, delta, k); }, target, x, rect,
      eps_lo, eps_hi);
}

std::vector<SweepRow> sweep(const std::vector<std::string>& families,
                            const std::vector<double>& eps_grid,
                            const std::vector<double>& theta_grid, const std::vector<double>& x) {
  if (families.empty() || eps_grid.empty() || theta_grid.empty()) {
    throw ValidationError("sweep grids must be non-empty");
  }
  constexpr double kGaussianDefaultDelta = 0.05;

  std::vector<SweepRow> rows;
  rows.reserve(families.size() * eps_grid.size() * theta_grid.size());
  for (double eps : eps_grid) {
    for (double theta : theta_grid) {
      const Hyperrectangle rect = Hyperrectangle::box(x, theta);
      const std::size_t cell_begin = rows.size();
      double cell_max = 0.0;
      for (const std::string& family : families) {
        const MechanismPtr mech = make_family_mechanism(
            family, eps, family == "gaussian" ? kGaussianDefaultDelta : 0.0);
        SweepRow row;
        row.family = family;
        row.epsilon = eps;
        {
          std::ostringstream os;
          os << theta;
          row.theta_or_rect = os.str();
        }
        const PrivacyParams composed =
            compose_pac(eps, mech->params().delta, static_cast<int>(x.size()));
        row.composed_eps = composed.epsilon;
        row.composed_delta = composed.delta;
        double product = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double p =
              mech->interval_probability(x[i], rect.dims[i].lo, rect.dims[i].hi).value;
          row.per_dim_probs.push_back(p);
          product *= p;
        }
        row.rho = product;
        cell_max = std::max(cell_max, product);
        rows.push_back(std::move(row));
      }
      for (std::size_t i = cell_begin; i < rows.size(); ++i) {
        rows[i].best = rows[i].rho >= cell_max - kTol;
      }
    }
  }
  return rows;
}

}  // namespace ldpu
