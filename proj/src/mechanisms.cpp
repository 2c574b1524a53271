// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#include "ldpu/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ldpu {

namespace {

constexpr double kEndpointTol = 1e-12;  // absolute tolerance for interval endpoints
constexpr double kMinEpsilon = 1e-6;    // smallest accepted privacy budget

void check_epsilon(double eps) {
  if (!(eps >= kMinEpsilon) || !std::isfinite(eps)) {
    throw ValidationError("epsilon must be a finite value >= 1e-6, got " + std::to_string(eps));
  }
}

void check_delta_open(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw ValidationError("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

void check_grid(int k) {
  if (k < 2) {
    throw ValidationError("grid size k must be >= 2, got " + std::to_string(k));
  }
}

double phi_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

// Nearest grid index for x in [0,1] on the grid {i/(k-1)}; ties round up.
int snap_index(double x, int k) {
  const int i = static_cast<int>(std::floor(x * (k - 1) + 0.5));
  return std::clamp(i, 0, k - 1);
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::Laplace: return "laplace";
    case Family::Gaussian: return "gaussian";
    case Family::PM: return "pm";
    case Family::SW: return "sw";
    case Family::KRR: return "krr";
    case Family::Exponential: return "exponential";
    case Family::Indicator: return "indicator";
  }
  return "unknown";
}

void Mechanism::check_unit(double v, const char* name) {
  if (!(v >= -kEndpointTol) || !(v <= 1.0 + kEndpointTol)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

void Mechanism::check_interval(double a, double b) {
  check_unit(a, "interval endpoint a");
  check_unit(b, "interval endpoint b");
  if (a > b + kEndpointTol) {
    throw ValidationError("interval endpoints must satisfy a <= b");
  }
}

double Mechanism::atom_at(double x, double t) const {
  check_unit(x, "input x");
  check_unit(t, "output t");
  return 0.0;
}

// ---------------------------------------------------------------------------
// Noise-adding mechanisms (additive symmetric noise, clamped to [0,1]).
// Clamping piles the raw noise tails into atoms at 0 and 1; Pr[M(x) <= t] for
// t in [0,1) is simply the raw noise CDF at t - x, and Pr[M(x) <= 1] = 1.
// ---------------------------------------------------------------------------

class ClampedNoiseMechanism : public Mechanism {
 public:
  PrivacyParams params() const override { return params_; }

  double pdf_at(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    return noise_pdf(t - x);
  }

  double atom_at(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    if (t <= kEndpointTol) return noise_cdf(0.0 - x);
    if (t >= 1.0 - kEndpointTol) return 1.0 - noise_cdf(1.0 - x);
    return 0.0;
  }

  double cdf(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    if (t >= 1.0 - kEndpointTol) return 1.0;
    return noise_cdf(t - x);
  }

  IntervalProbability interval_probability(double x, double a, double b) const override {
    check_unit(x, "input x");
    check_interval(a, b);
    const double upper = (b >= 1.0 - kEndpointTol) ? 1.0 : noise_cdf(b - x);
    // Pr[M(x) < a]: the atom at 0 is excluded exactly when a = 0.
    const double lower = (a <= kEndpointTol) ? 0.0 : noise_cdf(a - x);
    IntervalProbability out;
    out.value = std::clamp(upper - lower, 0.0, 1.0);
    out.includes_left_atom = a <= kEndpointTol;
    out.includes_right_atom = b >= 1.0 - kEndpointTol;
    return out;
  }

  double sample(double x, Rng& rng) const override {
    check_unit(x, "input x");
    return std::clamp(x + noise_draw(rng), 0.0, 1.0);
  }

 protected:
  explicit ClampedNoiseMechanism(PrivacyParams params) : params_(params) {}

  virtual double noise_pdf(double z) const = 0;
  virtual double noise_cdf(double z) const = 0;
  virtual double noise_draw(Rng& rng) const = 0;

  PrivacyParams params_;
};

class LaplaceMechanism final : public ClampedNoiseMechanism {
 public:
  explicit LaplaceMechanism(double eps) : ClampedNoiseMechanism({eps, 0.0}) {}

  Family family() const override { return Family::Laplace; }
  bool is_pure() const override { return true; }

 protected:
  double noise_pdf(double z) const override {
    return 0.5 * params_.epsilon * std::exp(-params_.epsilon * std::fabs(z));
  }
  double noise_cdf(double z) const override {
    const double e = params_.epsilon;
    return z < 0.0 ? 0.5 * std::exp(e * z) : 1.0 - 0.5 * std::exp(-e * z);
  }
  double noise_draw(Rng& rng) const override {
    const double u = rng.uniform01();
    const double e = params_.epsilon;
    return u < 0.5 ? std::log(2.0 * u) / e : -std::log(2.0 * (1.0 - u)) / e;
  }
};

class GaussianMechanism final : public ClampedNoiseMechanism {
 public:
  GaussianMechanism(double eps, double delta)
      : ClampedNoiseMechanism({eps, delta}), sigma_(gaussian_sigma(eps, delta)) {}

  Family family() const override { return Family::Gaussian; }
  bool is_pure() const override { return false; }
  double sigma() const { return sigma_; }

 protected:
  double noise_pdf(double z) const override {
    static constexpr double kInvSqrt2Pi = 0.3989422804014326779;
    return kInvSqrt2Pi / sigma_ * std::exp(-0.5 * z * z / (sigma_ * sigma_));
  }
  double noise_cdf(double z) const override { return phi_cdf(z / sigma_); }
  double noise_draw(Rng& rng) const override { return sigma_ * rng.gaussian(); }

 private:
  double sigma_;
};

double gaussian_sigma(double eps, double delta) {
  check_epsilon(eps);
  check_delta_open(delta);
  const double big_l = std::log(2.0 / delta);
  const double form_a = 0.5 * std::sqrt(2.0) * (std::sqrt(big_l + eps) + std::sqrt(big_l)) / eps;
  const double form_b =
      (std::sqrt(-2.0 * std::log(delta / 2.0)) + std::sqrt(-2.0 * std::log(delta / 2.0) + 2.0 * eps)) /
      (2.0 * eps);
  if (std::fabs(form_a - form_b) > 1e-12 * std::max(form_a, form_b)) {
    throw ComputationError("gaussian_sigma: algebraic forms disagree");
  }
  return form_a;
}

// ---------------------------------------------------------------------------
// Piecewise mechanisms (PM and SW): density p_high on a window [l, r] of width
// 2C around x (shifted inward near the domain edges), p_high / e^eps elsewhere.
// ---------------------------------------------------------------------------

class PiecewiseMechanism : public Mechanism {
 public:
  PrivacyParams params() const override { return params_; }
  bool is_pure() const override { return true; }

  double high_density() const { return p_high_; }
  double low_density() const { return p_low_; }
  double half_width() const { return c_; }

  // The high-density window [l, r]; width is exactly 2C in all three cases.
  std::pair<double, double> high_region(double x) const {
    check_unit(x, "input x");
    if (x < c_) return {0.0, 2.0 * c_};
    if (x <= 1.0 - c_) return {x - c_, x + c_};
    return {1.0 - 2.0 * c_, 1.0};
  }

  double pdf_at(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    const auto [l, r] = high_region(x);
    return (t >= l - kEndpointTol && t <= r + kEndpointTol) ? p_high_ : p_low_;
  }

  double cdf(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    const auto [l, r] = high_region(x);
    const double overlap = std::max(0.0, std::min(t, r) - l);
    return p_low_ * (t - overlap) + p_high_ * overlap;
  }

  IntervalProbability interval_probability(double x, double a, double b) const override {
    check_unit(x, "input x");
    check_interval(a, b);
    const auto [l, r] = high_region(x);
    const double overlap = std::max(0.0, std::min(b, r) - std::max(a, l));
    IntervalProbability out;
    out.value = std::clamp(p_high_ * overlap + p_low_ * ((b - a) - overlap), 0.0, 1.0);
    return out;
  }

  double sample(double x, Rng& rng) const override {
    check_unit(x, "input x");
    const auto [l, r] = high_region(x);
    const double mass_high = p_high_ * (r - l);
    if (rng.uniform01() < mass_high) {
      return rng.uniform(l, r);
    }
    // Uniform over [0,1] \ [l,r]: draw in the collapsed complement and shift.
    const double u = rng.uniform01() * (1.0 - (r - l));
    return u < l ? u : u + (r - l);
  }

 protected:
  PiecewiseMechanism(double eps, double p_high, double c)
      : params_{eps, 0.0}, p_high_(p_high), p_low_(p_high / std::exp(eps)), c_(c) {}

  PrivacyParams params_;
  double p_high_;
  double p_low_;
  double c_;
};

class PmMechanism final : public PiecewiseMechanism {
 public:
  explicit PmMechanism(double eps)
      : PiecewiseMechanism(eps, std::exp(eps / 2.0),
                           (std::exp(eps / 2.0) - 1.0) / (2.0 * std::exp(eps) - 2.0)) {}
  Family family() const override { return Family::PM; }
};

class SwMechanism final : public PiecewiseMechanism {
 public:
  explicit SwMechanism(double eps)
      : PiecewiseMechanism(eps, (std::exp(eps) - 1.0) / eps,
                           (std::exp(eps) * (eps - 1.0) + 1.0) /
                               (2.0 * (std::exp(eps) - 1.0) * (std::exp(eps) - 1.0))) {}
  Family family() const override { return Family::SW; }
};

// ---------------------------------------------------------------------------
// Discrete mechanisms on the grid {i/(k-1) : i = 0..k-1}.
// ---------------------------------------------------------------------------

class DiscreteMechanism : public Mechanism {
 public:
  PrivacyParams params() const override { return params_; }
  bool is_pure() const override { return true; }
  bool is_discrete() const override { return true; }
  int grid_size() const override { return k_; }

  double snap(double x) const override {
    check_unit(x, "input x");
    return static_cast<double>(snap_index(x, k_)) / (k_ - 1);
  }

  double pdf_at(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    const double scaled = t * (k_ - 1);
    const int j = static_cast<int>(std::floor(scaled + 0.5));
    if (j < 0 || j >= k_ || std::fabs(scaled - j) > 1e-9) return 0.0;  // off-grid output
    return mass(snap_index(x, k_), j);
  }

  double cdf(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    const int i = snap_index(x, k_);
    const int jhi = static_cast<int>(std::floor(t * (k_ - 1) + 1e-9));
    if (jhi < 0) return 0.0;
    return prefix_mass(i, std::min(jhi, k_ - 1));
  }

  IntervalProbability interval_probability(double x, double a, double b) const override {
    check_unit(x, "input x");
    check_interval(a, b);
    const int i = snap_index(x, k_);
    const int jlo = std::max(0, static_cast<int>(std::ceil(a * (k_ - 1) - 1e-9)));
    const int jhi = std::min(k_ - 1, static_cast<int>(std::floor(b * (k_ - 1) + 1e-9)));
    IntervalProbability out;
    if (jlo > jhi) return out;
    out.value = std::clamp(prefix_mass(i, jhi) - (jlo > 0 ? prefix_mass(i, jlo - 1) : 0.0), 0.0, 1.0);
    return out;
  }

  double sample(double x, Rng& rng) const override {
    check_unit(x, "input x");
    const int i = snap_index(x, k_);
    return static_cast<double>(draw_index(i, rng)) / (k_ - 1);
  }

 protected:
  DiscreteMechanism(double eps, int k) : params_{eps, 0.0}, k_(k) {}

  // Point mass Pr[M(grid[i]) = grid[j]].
  virtual double mass(int i, int j) const = 0;
  // Pr[M(grid[i]) <= grid[j]].
  virtual double prefix_mass(int i, int j) const = 0;
  virtual int draw_index(int i, Rng& rng) const = 0;

  PrivacyParams params_;
  int k_;
};

class KrrMechanism final : public DiscreteMechanism {
 public:
  KrrMechanism(double eps, int k)
      : DiscreteMechanism(eps, k),
        p_keep_(std::exp(eps) / (k - 1 + std::exp(eps))),
        p_other_(1.0 / (k - 1 + std::exp(eps))) {}

  Family family() const override { return Family::KRR; }

 protected:
  double mass(int i, int j) const override { return j == i ? p_keep_ : p_other_; }

  double prefix_mass(int i, int j) const override {
    return (j + 1) * p_other_ + (j >= i ? p_keep_ - p_other_ : 0.0);
  }

  int draw_index(int i, Rng& rng) const override {
    if (rng.uniform01() < p_keep_) return i;
    int j = std::min(static_cast<int>(rng.uniform01() * (k_ - 1)), k_ - 2);
    if (j >= i) ++j;
    return j;
  }

 private:
  double p_keep_;
  double p_other_;
};

// Exponential mechanism with score -|x - t| and sensitivity 1: mass at grid
// distance m is proportional to q^m with q = exp(-eps / (2(k-1))). Geometric
// partial sums give O(1) interval probabilities and O(log k) sampling.
class ExponentialMechanism final : public DiscreteMechanism {
 public:
  ExponentialMechanism(double eps, int k)
      : DiscreteMechanism(eps, k), c_(eps / (2.0 * (k - 1))), q_(std::exp(-c_)) {}

  Family family() const override { return Family::Exponential; }

 protected:
  double mass(int i, int j) const override {
    return std::exp(-c_ * std::abs(j - i)) / normalizer(i);
  }

  double prefix_mass(int i, int j) const override { return raw_prefix(i, j) / normalizer(i); }

  int draw_index(int i, Rng& rng) const override {
    const double target = rng.uniform01() * normalizer(i);
    int lo = 0, hi = k_ - 1;
    while (lo < hi) {  // smallest j with raw_prefix(i, j) >= target
      const int mid = (lo + hi) / 2;
      if (raw_prefix(i, mid) >= target) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  }

 private:
  // (1 - q^n) / (1 - q), computed via expm1 for stability at small eps.
  double gsum(int n) const {
    if (n <= 0) return 0.0;
    return std::expm1(-c_ * n) / std::expm1(-c_);
  }
  // Unnormalized sum of q^|m - i| for m = 0..j.
  double raw_prefix(int i, int j) const {
    if (j < 0) return 0.0;
    if (j <= i) return std::exp(-c_ * (i - j)) * gsum(j + 1);
    return gsum(i + 1) + q_ * gsum(j - i);
  }
  double normalizer(int i) const { return raw_prefix(i, k_ - 1); }

  double c_;
  double q_;
};

// ---------------------------------------------------------------------------
// Privacy indicator wrapper.
// ---------------------------------------------------------------------------

class IndicatorMechanism final : public Mechanism {
 public:
  IndicatorMechanism(MechanismPtr inner, double delta) : inner_(std::move(inner)), delta_(delta) {}

  Family family() const override { return Family::Indicator; }
  PrivacyParams params() const override { return {inner_->params().epsilon, delta_}; }
  bool is_pure() const override { return false; }
  bool is_discrete() const override { return inner_->is_discrete(); }
  int grid_size() const override { return inner_->grid_size(); }
  double snap(double x) const override { return inner_->snap(x); }
  const Mechanism& inner() const { return *inner_; }
  double delta() const { return delta_; }

  double pdf_at(double x, double t) const override {
    return (1.0 - delta_) * inner_->pdf_at(x, t);
  }

  double atom_at(double x, double t) const override {
    double atom = (1.0 - delta_) * inner_->atom_at(x, t);
    if (std::fabs(t - x) <= kEndpointTol) atom += delta_;
    return atom;
  }

  double cdf(double x, double t) const override {
    check_unit(x, "input x");
    check_unit(t, "output t");
    return delta_ * (x <= t + kEndpointTol ? 1.0 : 0.0) + (1.0 - delta_) * inner_->cdf(x, t);
  }

  IntervalProbability interval_probability(double x, double a, double b) const override {
    check_unit(x, "input x");
    check_interval(a, b);
    IntervalProbability out = inner_->interval_probability(x, a, b);
    const bool inside = (x >= a - kEndpointTol) && (x <= b + kEndpointTol);
    out.value = delta_ * (inside ? 1.0 : 0.0) + (1.0 - delta_) * out.value;
    return out;
  }

  double sample(double x, Rng& rng) const override {
    check_unit(x, "input x");
    if (rng.uniform01() < delta_) return x;
    return inner_->sample(x, rng);
  }

 private:
  MechanismPtr inner_;
  double delta_;
};

// ---------------------------------------------------------------------------
// Factories.
// ---------------------------------------------------------------------------

MechanismPtr make_laplace(double eps) {
  check_epsilon(eps);
  return std::make_shared<LaplaceMechanism>(eps);
}

MechanismPtr make_gaussian(double eps, double delta) {
  return std::make_shared<GaussianMechanism>(eps, delta);  // parameter checks in gaussian_sigma
}

MechanismPtr make_pm(double eps) {
  check_epsilon(eps);
  return std::make_shared<PmMechanism>(eps);
}

MechanismPtr make_sw(double eps) {
  check_epsilon(eps);
  return std::make_shared<SwMechanism>(eps);
}

MechanismPtr make_krr(double eps, int k) {
  check_epsilon(eps);
  check_grid(k);
  return std::make_shared<KrrMechanism>(eps, k);
}

MechanismPtr make_exponential(double eps, int k) {
  check_epsilon(eps);
  check_grid(k);
  return std::make_shared<ExponentialMechanism>(eps, k);
}

MechanismPtr wrap_indicator(MechanismPtr inner, double delta) {
  if (!inner) throw ValidationError("privacy indicator requires an inner mechanism");
  check_delta_open(delta);
  if (!inner->is_pure()) {
    throw ValidationError("privacy indicator requires a pure-LDP inner mechanism; " +
                          family_name(inner->family()) + " is not pure");
  }
  return std::make_shared<IndicatorMechanism>(std::move(inner), delta);
}

PrivacyParams compose_pac(double eps, double delta, int d) {
  check_epsilon(eps);
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw ValidationError("delta must lie in [0, 1), got " + std::to_string(delta));
  }
  if (d < 1) throw ValidationError("dimension count d must be >= 1, got " + std::to_string(d));
  return {static_cast<double>(d) * eps, 1.0 - std::pow(1.0 - delta, d)};
}

MechanismPtr parse_mechanism_spec(const std::string& spec) {
  std::vector<std::string> fields;
  std::stringstream ss(spec);
  std::string field;
  while (std::getline(ss, field, ':')) fields.push_back(field);
  if (fields.size() < 2) {
    throw ValidationError("mechanism spec must look like family:eps[:delta][:k], got '" + spec + "'");
  }

  const std::string& fam = fields[0];
  std::vector<double> values;
  for (std::size_t idx = 1; idx < fields.size(); ++idx) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(fields[idx], &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != fields[idx].size()) {
      throw ValidationError("mechanism spec '" + spec + "' has a non-numeric field '" + fields[idx] + "'");
    }
    values.push_back(v);
  }

  const double eps = values[0];
  double delta = -1.0;
  int k = 100;
  for (std::size_t idx = 1; idx < values.size(); ++idx) {
    const double v = values[idx];
    if (v >= 0.0 && v < 1.0) {
      delta = v;
    } else if (v >= 2.0 && v == std::floor(v)) {
      k = static_cast<int>(v);
    } else {
      throw ValidationError("mechanism spec field '" + fields[idx + 1] +
                            "' is neither a delta in [0,1) nor a grid size >= 2");
    }
  }

  if (delta == 0.0) throw ValidationError("delta = 0 is rejected; omit the field for pure LDP");
  return make_family_mechanism(fam, eps, std::max(delta, 0.0), k);
}

MechanismPtr make_family_mechanism(const std::string& family, double eps, double delta, int k) {
  if (family == "gaussian") {
    if (!(delta > 0.0)) {
      throw ValidationError("gaussian mechanism requires a delta in (0, 1), e.g. gaussian:1:0.1");
    }
    return make_gaussian(eps, delta);
  }
  MechanismPtr mech;
  if (family == "laplace") mech = make_laplace(eps);
  else if (family == "pm") mech = make_pm(eps);
  else if (family == "sw") mech = make_sw(eps);
  else if (family == "krr") mech = make_krr(eps, k);
  else if (family == "exponential" || family == "exp") mech = make_exponential(eps, k);
  else throw ValidationError("unknown mechanism family '" + family + "'");
  if (delta > 0.0) mech = wrap_indicator(std::move(mech), delta);
  return mech;
}

}  // namespace ldpu
