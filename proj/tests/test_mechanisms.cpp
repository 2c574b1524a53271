// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "ldpu/mechanisms.hpp"
#include "ldpu/rng.hpp"

using namespace ldpu;

namespace {

// Composite Simpson over [lo, hi]; the integrands are smooth once split at
// their breakpoints, so a fixed panel count converges far below 1e-10.
double integrate(const Mechanism& mech, double x, double lo, double hi, int panels = 4000) {
  if (hi <= lo) return 0.0;
  const double h = (hi - lo) / (2.0 * panels);
  double sum = mech.pdf_at(x, lo) + mech.pdf_at(x, hi);
  for (int i = 1; i < 2 * panels; ++i) {
    sum += mech.pdf_at(x, lo + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Breakpoints of the continuous density for input x: clamp ends, the kink at
// x, and (for the piecewise families) the jump edges. Jumps are first
// bracketed on a coarse grid, then pinned by bisection so the quadrature
// panels never straddle a discontinuity.
std::vector<double> breakpoints(const Mechanism& mech, double x) {
  std::vector<double> pts = {0.0, 1.0, x};
  const int n = 2000;
  double prev = mech.pdf_at(x, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double cur = mech.pdf_at(x, t);
    if (std::fabs(cur - prev) > 1e-6 * (1.0 + std::fabs(prev))) {
      double lo = t - 1.0 / n, hi = t;
      const double lo_val = prev;
      while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (std::fabs(mech.pdf_at(x, mid) - lo_val) > 1e-6 * (1.0 + std::fabs(lo_val))) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      pts.push_back(lo);
      pts.push_back(hi);
    }
    prev = cur;
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double total_mass(const Mechanism& mech, double x) {
  if (mech.is_discrete()) {
    const int k = mech.grid_size();
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += mech.pdf_at(x, static_cast<double>(i) / (k - 1));
    sum += mech.atom_at(x, x);  // indicator wrappers add a release atom at x
    return sum;
  }
  std::vector<double> atom_sites = {0.0, 1.0, x};
  std::sort(atom_sites.begin(), atom_sites.end());
  atom_sites.erase(std::unique(atom_sites.begin(), atom_sites.end()), atom_sites.end());
  double sum = 0.0;
  for (double site : atom_sites) sum += mech.atom_at(x, site);
  const std::vector<double> pts = breakpoints(mech, x);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    sum += integrate(mech, x, pts[i], pts[i + 1]);
  }
  return sum;
}

// Exact sup_t |empirical CDF - analytic CDF| handling atoms and discrete mass:
// check both the left limit and the value at every distinct draw.
double ks_distance(const Mechanism& mech, double x, long n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> draws(static_cast<std::size_t>(n));
  for (double& d : draws) d = mech.sample(x, rng);
  std::sort(draws.begin(), draws.end());
  double dist = 0.0;
  std::size_t i = 0;
  while (i < draws.size()) {
    std::size_t j = i;
    while (j < draws.size() && draws[j] == draws[i]) ++j;
    const double v = draws[i];
    const double mass =
        mech.atom_at(x, v) + (mech.is_discrete() ? mech.pdf_at(x, v) : 0.0);
    const double cdf_at = mech.cdf(x, v);
    const double cdf_left = cdf_at - mass;
    dist = std::max(dist, std::fabs(static_cast<double>(i) / n - cdf_left));
    dist = std::max(dist, std::fabs(static_cast<double>(j) / n - cdf_at));
    i = j;
  }
  return dist;
}

}  // namespace

TEST_CASE("laplace interval probabilities match the closed form") {
  const MechanismPtr m = make_laplace(2.0);
  CHECK(m->interval_probability(0.5, 0.2, 0.8).value == doctest::Approx(0.45118836390597356).epsilon(1e-14));
  CHECK(m->interval_probability(0.5, 0.2, 0.8).value ==
        doctest::Approx(1.0 - std::exp(-0.6)).epsilon(1e-14));

  const double expected[] = {0.2591817793182822, 0.45118836390597356, 0.6988057880877979,
                             0.9092820467105875};
  const double eps_grid[] = {1.0, 2.0, 4.0, 8.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(make_laplace(eps_grid[i])->interval_probability(0.5, 0.2, 0.8).value ==
          doctest::Approx(expected[i]).epsilon(1e-14));
  }
}

TEST_CASE("laplace boundary atoms hold the clamped tail mass") {
  const MechanismPtr m = make_laplace(1.0);
  CHECK(m->atom_at(0.5, 0.0) == doctest::Approx(0.3032653298563167).epsilon(1e-14));
  CHECK(m->atom_at(0.5, 1.0) == doctest::Approx(0.3032653298563167).epsilon(1e-14));
  CHECK(m->atom_at(0.5, 0.5) == 0.0);

  const IntervalProbability left = m->interval_probability(0.5, 0.0, 0.3);
  CHECK(left.includes_left_atom);
  CHECK_FALSE(left.includes_right_atom);
  const IntervalProbability inner = m->interval_probability(0.5, 0.1, 0.9);
  CHECK_FALSE(inner.includes_left_atom);
  CHECK_FALSE(inner.includes_right_atom);
  const IntervalProbability all = m->interval_probability(0.5, 0.0, 1.0);
  CHECK(all.includes_left_atom);
  CHECK(all.includes_right_atom);
  CHECK(all.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pm mechanism matches its two-level closed form") {
  const MechanismPtr m = make_pm(2.0);
  const double C = 0.13447071068499755;
  CHECK(m->interval_probability(0.5, 0.2, 0.8).value == doctest::Approx(0.8528482235314231).epsilon(1e-14));
  // High window around an interior x is [x-C, x+C] with density e^{eps/2}.
  CHECK(m->pdf_at(0.5, 0.5) == doctest::Approx(2.718281828459045).epsilon(1e-14));
  CHECK(m->pdf_at(0.5, 0.5 + C - 1e-9) == doctest::Approx(2.718281828459045).epsilon(1e-6));
  CHECK(m->pdf_at(0.5, 0.5 + C + 1e-9) ==
        doctest::Approx(2.718281828459045 / std::exp(2.0)).epsilon(1e-6));
  // Edge inputs collapse the window to [0, 2C] / [1-2C, 1].
  CHECK(m->pdf_at(0.0, 0.0) == doctest::Approx(2.718281828459045).epsilon(1e-14));
  CHECK(m->pdf_at(0.0, 2.0 * C - 1e-9) == doctest::Approx(2.718281828459045).epsilon(1e-6));
  CHECK(m->pdf_at(1.0, 1.0) == doctest::Approx(2.718281828459045).epsilon(1e-14));
  CHECK(m->pdf_at(1.0, 1.0 - 2.0 * C + 1e-9) == doctest::Approx(2.718281828459045).epsilon(1e-6));
}

TEST_CASE("sw mechanism matches its two-level closed form") {
  const MechanismPtr m = make_sw(2.0);
  CHECK(m->interval_probability(0.5, 0.2, 0.8).value == doctest::Approx(0.8270670566473224).epsilon(1e-14));
  CHECK(m->pdf_at(0.5, 0.5) == doctest::Approx(3.194528049465325).epsilon(1e-14));
  CHECK(m->pdf_at(0.5, 0.95) ==
        doctest::Approx(3.194528049465325 / std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("krr keeps the snapped value with boosted probability") {
  const MechanismPtr m = make_krr(2.0, 100);
  CHECK(m->is_discrete());
  CHECK(m->grid_size() == 100);
  CHECK(m->snap(0.5) == doctest::Approx(0.5050505050505051).epsilon(1e-15));
  CHECK(m->interval_probability(0.5, 0.2, 0.8).value == doctest::Approx(0.6240214786490426).epsilon(1e-14));

  const double p_keep = m->pdf_at(0.5, m->snap(0.5));
  const double p_other = m->pdf_at(0.5, 0.0);
  CHECK(p_keep / p_other == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
  CHECK(p_keep == doctest::Approx(std::exp(2.0) / (99.0 + std::exp(2.0))).epsilon(1e-14));
  // Off-grid outputs carry no mass.
  CHECK(m->pdf_at(0.5, 0.5) == 0.0);
}

TEST_CASE("snap rounds half away from zero on the k-RR grid") {
  const MechanismPtr m = make_krr(1.0, 5);  // grid {0, .25, .5, .75, 1}
  CHECK(m->snap(0.125) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m->snap(0.375) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m->snap(0.1249) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m->snap(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exponential mechanism decays geometrically and matches brute force") {
  const MechanismPtr m = make_exponential(2.0, 100);
  CHECK(m->interval_probability(0.5, 0.2, 0.8).value == doctest::Approx(0.6592859175332995).epsilon(1e-12));

  // Geometric decay of the snapped-input masses, rate eps/(2(k-1)).
  const double c = 2.0 / (2.0 * 99.0);
  CHECK(m->pdf_at(0.5, 50.0 / 99.0) / m->pdf_at(0.5, 99.0 / 99.0) ==
        doctest::Approx(std::exp(c * 49.0)).epsilon(1e-12));

  // Brute-force oracle on a small grid, straight from the definition.
  const int k = 7;
  const double eps = 1.7;
  const MechanismPtr small = make_exponential(eps, k);
  const int i = 4;  // snap(4/6)
  const double x = 4.0 / 6.0;
  double z = 0.0;
  std::vector<double> mass(k);
  for (int j = 0; j < k; ++j) {
    mass[j] = std::exp(-eps * std::abs(j - i) / (2.0 * (k - 1)));
    z += mass[j];
  }
  for (int j = 0; j < k; ++j) {
    CHECK(small->pdf_at(x, static_cast<double>(j) / (k - 1)) ==
          doctest::Approx(mass[j] / z).epsilon(1e-13));
  }
  double direct = 0.0;
  for (int j = 2; j <= 5; ++j) direct += mass[j] / z;
  CHECK(small->interval_probability(x, 2.0 / 6.0, 5.0 / 6.0).value ==
        doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("gaussian sigma closed form is frozen and PAC-valid") {
  CHECK(gaussian_sigma(1.0, 0.1) == doctest::Approx(2.6373323417960006).epsilon(1e-15));
  CHECK(gaussian_sigma(2.0, 0.05) == doctest::Approx(1.5223241013149142).epsilon(1e-15));
  CHECK(gaussian_sigma(2.0, 0.1) == doctest::Approx(1.4021686572864223).epsilon(1e-15));

  const MechanismPtr m = make_gaussian(2.0, 0.05);
  CHECK_FALSE(m->is_pure());
  CHECK(m->params().delta == 0.05);
  CHECK(m->interval_probability(0.5, 0.2, 0.8).value ==
        doctest::Approx(0.15622497316439987).epsilon(1e-13));

  // Analytic privacy-loss tail 2*Phibar(eps*sigma - 1/(2 sigma)) <= delta.
  const auto tail = [](double eps, double delta) {
    const double s = gaussian_sigma(eps, delta);
    const double arg = eps * s - 1.0 / (2.0 * s);
    return std::erfc(arg / std::sqrt(2.0));  // == 2 * Phibar(arg)
  };
  CHECK(tail(1.0, 0.1) == doctest::Approx(0.014375262424643718).epsilon(1e-10));
  CHECK(tail(1.0, 0.01) == doctest::Approx(0.001132936831005235).epsilon(1e-10));
  CHECK(tail(8.0, 0.05) == doctest::Approx(0.00660354079569001).epsilon(1e-10));
  for (double eps : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    for (double delta : {0.01, 0.05, 0.1, 0.3}) {
      CHECK(tail(eps, delta) <= delta);
    }
  }
}

TEST_CASE("densities and masses integrate to one") {
  std::vector<MechanismPtr> mechs = {
      make_laplace(0.5),  make_laplace(2.0),        make_gaussian(2.0, 0.05),
      make_pm(1.0),       make_pm(2.0),             make_sw(2.0),
      make_sw(6.0),       make_krr(2.0, 100),       make_exponential(2.0, 100),
      make_krr(1.0, 2),   make_exponential(0.5, 3), wrap_indicator(make_pm(2.0), 0.25),
  };
  for (const MechanismPtr& m : mechs) {
    for (double x : {0.0, 0.013, 0.5, 0.77, 1.0}) {
      CAPTURE(family_name(m->family()));
      CAPTURE(x);
      CHECK(total_mass(*m, x) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(m->cdf(x, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("interval probability agrees with CDF differences") {
  std::vector<MechanismPtr> mechs = {make_laplace(2.0), make_gaussian(1.0, 0.1), make_pm(3.0),
                                     make_sw(2.0), make_exponential(2.0, 50)};
  for (const MechanismPtr& m : mechs) {
    for (double x : {0.0, 0.3, 0.5, 1.0}) {
      for (double a : {0.0, 0.1, 0.45}) {
        for (double width : {0.0, 0.2, 0.55}) {
          const double b = std::min(1.0, a + width);
          const double direct = m->interval_probability(x, a, b).value;
          // pdf_at reports 0 off-grid, so this is the exact point mass at a.
          const double mass_at_a = m->atom_at(x, a) + (m->is_discrete() ? m->pdf_at(x, a) : 0.0);
          const double via_cdf = m->cdf(x, b) - m->cdf(x, a) + mass_at_a;
          CAPTURE(family_name(m->family()));
          CAPTURE(x);
          CAPTURE(a);
          CAPTURE(b);
          CHECK(direct == doctest::Approx(via_cdf).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("interval probability is monotone in epsilon and interval width") {
  const auto families = std::vector<std::pair<std::string, std::function<MechanismPtr(double)>>>{
      {"laplace", [](double e) { return make_laplace(e); }},
      {"pm", [](double e) { return make_pm(e); }},
      {"sw", [](double e) { return make_sw(e); }},
      {"krr", [](double e) { return make_krr(e, 100); }},
      {"exponential", [](double e) { return make_exponential(e, 100); }},
  };
  for (const auto& [name, make] : families) {
    double prev = -1.0;
    for (double eps = 0.25; eps <= 8.0; eps += 0.25) {
      const double p = make(eps)->interval_probability(0.5, 0.2, 0.8).value;
      CAPTURE(name);
      CAPTURE(eps);
      CHECK(p >= prev - 1e-12);
      prev = p;
    }
    const MechanismPtr m = make(2.0);
    double prev_width = -1.0;
    for (double w = 0.0; w <= 0.5 + 1e-9; w += 0.05) {
      const double p = m->interval_probability(0.5, 0.5 - w, 0.5 + w).value;
      CHECK(p >= prev_width - 1e-12);
      prev_width = p;
    }
  }
}

TEST_CASE("pure families satisfy the eps-LDP density ratio bound") {
  // Smaller grid than the acceptance sweep; checks every family fast.
  const int grid = 21;
  for (double eps : {0.5, 2.0}) {
    std::vector<MechanismPtr> mechs = {make_laplace(eps), make_pm(eps), make_sw(eps),
                                       make_krr(eps, 20), make_exponential(eps, 20)};
    const double bound = std::exp(eps) * (1.0 + 1e-9);
    for (const MechanismPtr& m : mechs) {
      double worst = 0.0;
      for (int i1 = 0; i1 <= grid; ++i1) {
        for (int i2 = 0; i2 <= grid; ++i2) {
          const double x1 = static_cast<double>(i1) / grid;
          const double x2 = static_cast<double>(i2) / grid;
          if (m->is_discrete()) {
            const int k = m->grid_size();
            for (int j = 0; j < k; ++j) {
              const double t = static_cast<double>(j) / (k - 1);
              const double p1 = m->pdf_at(x1, t);
              const double p2 = m->pdf_at(x2, t);
              worst = std::max(worst, p1 / p2);
            }
          } else {
            for (int j = 0; j <= grid; ++j) {
              const double t = static_cast<double>(j) / grid;
              const double p2 = m->pdf_at(x2, t);
              if (p2 > 0.0) worst = std::max(worst, m->pdf_at(x1, t) / p2);
              const double a2 = m->atom_at(x2, t);
              if (a2 > 0.0) worst = std::max(worst, m->atom_at(x1, t) / a2);
            }
          }
        }
      }
      CAPTURE(family_name(m->family()));
      CAPTURE(eps);
      CHECK(worst <= bound);
      CHECK(worst > 1.0);  // the bound is non-trivial
    }
  }
}

TEST_CASE("samplers reproduce their analytic CDFs") {
  const long n = 20000;
  std::vector<MechanismPtr> mechs = {make_laplace(2.0),           make_gaussian(2.0, 0.1),
                                     make_pm(2.0),                make_sw(2.0),
                                     make_krr(2.0, 100),          make_exponential(2.0, 100),
                                     wrap_indicator(make_laplace(2.0), 0.2)};
  for (const MechanismPtr& m : mechs) {
    for (double x : {0.08, 0.5}) {
      CAPTURE(family_name(m->family()));
      CAPTURE(x);
      CHECK(ks_distance(*m, x, n, /*seed=*/1234) < 0.02);
    }
  }
}

TEST_CASE("sampling is deterministic under a fixed seed") {
  const MechanismPtr m = make_pm(2.0);
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 200; ++i) {
    const double va = m->sample(0.3, a);
    const double vb = m->sample(0.3, b);
    const double vc = m->sample(0.3, c);
    all_equal = all_equal && va == vb;
    any_diff = any_diff || va != vc;
  }
  CHECK(all_equal);
  CHECK(any_diff);

  // Substreams with distinct ids are distinct; the same id reproduces.
  Rng base(7);
  Rng s1 = base.substream(1), s1b = Rng(7).substream(1), s2 = base.substream(2);
  CHECK(s1.uniform01() == Rng(s1b).uniform01());
  CHECK(Rng(7).substream(1).uniform01() != s2.uniform01());
}

TEST_CASE("privacy indicator mixes the inner mechanism with release") {
  const MechanismPtr inner = make_laplace(2.0);
  const MechanismPtr m = wrap_indicator(inner, 0.1);
  CHECK_FALSE(m->is_pure());
  CHECK(m->params().epsilon == 2.0);
  CHECK(m->params().delta == 0.1);

  const double inner_p = inner->interval_probability(0.5, 0.2, 0.8).value;
  const double mixed = m->interval_probability(0.5, 0.2, 0.8).value;
  CHECK(mixed == doctest::Approx(0.1 + 0.9 * inner_p).epsilon(1e-14));
  CHECK(mixed == doctest::Approx(0.5060695275153763).epsilon(1e-14));
  // x outside the interval: only the inner mass remains.
  CHECK(m->interval_probability(0.9, 0.2, 0.8).value ==
        doctest::Approx(0.9 * inner->interval_probability(0.9, 0.2, 0.8).value).epsilon(1e-14));
  CHECK(m->atom_at(0.5, 0.5) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(m->pdf_at(0.5, 0.3) == doctest::Approx(0.9 * inner->pdf_at(0.5, 0.3)).epsilon(1e-14));

  // delta + (1-delta) * p >= p: the refinement never reduces the guarantee.
  for (double delta : {0.01, 0.25, 0.7}) {
    const MechanismPtr w = wrap_indicator(inner, delta);
    CHECK(w->interval_probability(0.5, 0.2, 0.8).value >= inner_p);
  }
}

TEST_CASE("pac composition of d mechanisms") {
  const PrivacyParams composed = compose_pac(2.0, 0.1, 2);
  CHECK(composed.epsilon == 4.0);
  CHECK(composed.delta == doctest::Approx(0.19).epsilon(1e-12));

  // 1-(1-delta)^d <= d*delta over a 10x10 grid.
  for (int di = 1; di <= 10; ++di) {
    for (int i = 1; i <= 10; ++i) {
      const double delta = i / 20.0;  // up to 0.5
      const PrivacyParams p = compose_pac(1.0, delta, di);
      CHECK(p.epsilon == doctest::Approx(static_cast<double>(di)).epsilon(1e-12));
      CHECK(p.delta <= di * delta + 1e-12);
      CHECK(p.delta >= delta - 1e-12);
    }
  }
}

TEST_CASE("mechanism spec strings parse by field value") {
  CHECK(parse_mechanism_spec("laplace:2")->family() == Family::Laplace);
  CHECK(parse_mechanism_spec("laplace:2")->is_pure());
  CHECK(parse_mechanism_spec("pm:1.5")->params().epsilon == 1.5);
  CHECK(parse_mechanism_spec("gaussian:1:0.05")->family() == Family::Gaussian);
  CHECK(parse_mechanism_spec("krr:2:100")->grid_size() == 100);
  CHECK(parse_mechanism_spec("krr:2:0.1:100")->family() == Family::Indicator);
  CHECK(parse_mechanism_spec("krr:2:100:0.1")->family() == Family::Indicator);
  CHECK(parse_mechanism_spec("exp:2:50")->family() == Family::Exponential);

  const MechanismPtr wrapped = parse_mechanism_spec("laplace:2:0.1");
  CHECK(wrapped->family() == Family::Indicator);
  CHECK(wrapped->params().delta == 0.1);

  CHECK_THROWS_AS((void)parse_mechanism_spec("laplace"), ValidationError);
  CHECK_THROWS_AS((void)parse_mechanism_spec("bogus:2"), ValidationError);
  CHECK_THROWS_AS((void)parse_mechanism_spec("gaussian:2"), ValidationError);
  CHECK_THROWS_AS((void)parse_mechanism_spec("laplace:2:0"), ValidationError);
  CHECK_THROWS_AS((void)parse_mechanism_spec("laplace:abc"), ValidationError);
  CHECK_THROWS_AS((void)parse_mechanism_spec("krr:2:1"), ValidationError);
  CHECK_THROWS_AS((void)parse_mechanism_spec("laplace:2:1.5"), ValidationError);
  CHECK_THROWS_AS((void)parse_mechanism_spec(""), ValidationError);
}

TEST_CASE("constructor validation rejects out-of-range parameters") {
  CHECK_THROWS_AS((void)make_laplace(0.0), ValidationError);
  CHECK_THROWS_AS((void)make_laplace(-1.0), ValidationError);
  CHECK_THROWS_AS((void)make_pm(0.0), ValidationError);
  CHECK_THROWS_AS((void)make_krr(2.0, 1), ValidationError);
  CHECK_THROWS_AS((void)make_gaussian(2.0, 0.0), ValidationError);
  CHECK_THROWS_AS((void)make_gaussian(2.0, 1.0), ValidationError);
  CHECK_THROWS_AS((void)wrap_indicator(make_laplace(1.0), 0.0), ValidationError);
  CHECK_THROWS_AS((void)wrap_indicator(make_laplace(1.0), 1.0), ValidationError);
  CHECK_THROWS_AS((void)wrap_indicator(make_gaussian(1.0, 0.1), 0.1), ValidationError);

  const MechanismPtr m = make_laplace(1.0);
  CHECK_THROWS_AS((void)m->interval_probability(0.5, 0.8, 0.2), ValidationError);
  CHECK_THROWS_AS((void)m->interval_probability(1.5, 0.2, 0.8), ValidationError);
  CHECK_THROWS_AS((void)m->interval_probability(0.5, -0.1, 0.8), ValidationError);
  CHECK_THROWS_AS((void)m->pdf_at(-0.2, 0.5), ValidationError);
}
