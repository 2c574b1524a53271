// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Local-differential-privacy mechanisms on the data domain [0,1], exposed as
// immutable distribution objects with exact pdf/CDF (including boundary atoms),
// closed-form interval probabilities, and deterministic samplers.
//
// Families:
//   Laplace      x + Lap(1/eps), clamped to [0,1] (atoms at 0 and 1)
//   Gaussian     x + N(0, sigma^2) with the PAC-calibrated sigma, clamped
//   PM / SW      two-level piecewise pdf with a high-density window around x
//   KRR          k-ary randomized response on the grid {i/(k-1)}
//   Exponential  grid mechanism with mass proportional to exp(-eps|x-t|/2)
//   Indicator    releases x unperturbed with probability delta, else the inner
//                pure-LDP mechanism (PAC relaxation)

#pragma once

#include <memory>
#include <string>

#include "ldpu/errors.hpp"
#include "ldpu/rng.hpp"

namespace ldpu {

enum class Family { Laplace, Gaussian, PM, SW, KRR, Exponential, Indicator };

std::string family_name(Family family);

struct PrivacyParams {
  double epsilon = 0.0;  // per-dimension privacy budget, > 0
  double delta = 0.0;    // PAC failure probability in [0,1); 0 = pure LDP
};

struct IntervalProbability {
  double value = 0.0;             // Pr[a <= M(x) <= b]
  bool includes_left_atom = false;   // boundary atom at a contributed
  bool includes_right_atom = false;  // boundary atom at b contributed
};

class Mechanism {
 public:
  virtual ~Mechanism() = default;

  virtual Family family() const = 0;
  virtual PrivacyParams params() const = 0;

  // True when the mechanism satisfies pure eps-LDP (delta = 0 and bounded
  // density ratios); Gaussian and Indicator report false.
  virtual bool is_pure() const = 0;

  virtual bool is_discrete() const { return false; }
  // Grid cardinality for discrete families, 0 otherwise.
  virtual int grid_size() const { return 0; }
  // Discrete families round the input to the nearest grid point; continuous
  // families return x unchanged.
  virtual double snap(double x) const { return x; }

  // Density (continuous part) or point mass (discrete) of M(x) at t.
  virtual double pdf_at(double x, double t) const = 0;

  // Atom mass of M(x) at exactly t (clamping atoms at 0/1, indicator atom at x).
  // Zero for families without atoms; discrete masses are reported by pdf_at.
  virtual double atom_at(double x, double t) const;

  // CDF: Pr[M(x) <= t] for t in [0,1]; includes any atoms at or below t.
  virtual double cdf(double x, double t) const = 0;

  // Closed-form Pr[a <= M(x) <= b] over the closed interval, boundary atoms
  // included whenever they sit inside [a,b].
  virtual IntervalProbability interval_probability(double x, double a, double b) const = 0;

  // One perturbed draw for input x.
  virtual double sample(double x, Rng& rng) const = 0;

 protected:
  static void check_unit(double v, const char* name);
  static void check_interval(double a, double b);
};

using MechanismPtr = std::shared_ptr<const Mechanism>;

MechanismPtr make_laplace(double eps);

// Closed-form sigma making x + N(0, sigma^2) an (eps, delta)-PAC LDP mechanism
// on [0,1]; both algebraic forms are evaluated and cross-checked internally.
double gaussian_sigma(double eps, double delta);

MechanismPtr make_gaussian(double eps, double delta);
MechanismPtr make_pm(double eps);
MechanismPtr make_sw(double eps);
MechanismPtr make_krr(double eps, int k = 100);
MechanismPtr make_exponential(double eps, int k = 100);

// Privacy indicator: with probability delta release x exactly, otherwise apply
// the inner mechanism. The inner mechanism must satisfy pure LDP.
MechanismPtr wrap_indicator(MechanismPtr inner, double delta);

// Sequential composition of d independent (eps, delta)-PAC LDP mechanisms:
// (d*eps, 1 - (1-delta)^d).
PrivacyParams compose_pac(double eps, double delta, int d);

// Compact mechanism description "family:eps[:delta][:k]". Trailing numeric
// fields are disambiguated by value: < 1 is a delta, an integer >= 2 is a grid
// size. A delta on a pure family produces an indicator-wrapped mechanism;
// gaussian requires a delta.
MechanismPtr parse_mechanism_spec(const std::string& spec);

// Same construction rules from already-parsed pieces. delta = 0 builds the pure
// mechanism (rejected for gaussian); delta > 0 builds gaussian or an
// indicator-wrapped pure mechanism.
MechanismPtr make_family_mechanism(const std::string& family, double eps, double delta = 0.0,
                                   int k = 100);

}  // namespace ldpu
