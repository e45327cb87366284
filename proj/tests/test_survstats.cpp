// Survival statistics: hand-computed examples plus independent oracles
// (direct partial-likelihood maximization, all-pairs concordance counts).

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "gliomorph/survstats/cindex.hpp"
#include "gliomorph/survstats/cox.hpp"
#include "gliomorph/survstats/km.hpp"
#include "gliomorph/survstats/logrank.hpp"
#include "gliomorph/survstats/special.hpp"
#include "gliomorph/survstats/survival_curve.hpp"
#include "helpers.hpp"

using gliomorph::Error;
using gliomorph::survstats::c_index;
using gliomorph::survstats::chisq_sf;
using gliomorph::survstats::cox_univariate;
using gliomorph::survstats::CoxStatus;
using gliomorph::survstats::gamma_q;
using gliomorph::survstats::km_curve;
using gliomorph::survstats::logrank;
using gliomorph::survstats::median_survival;
using gliomorph::survstats::normal_cdf;
using gliomorph::survstats::rmst;
using gliomorph::survstats::SurvivalCurve;
using gliomorph::volio::SurvivalRecord;

namespace {

SurvivalRecord rec(double t, bool event) { return SurvivalRecord{"", t, event}; }

// Breslow partial log-likelihood computed directly from its definition:
// for each distinct event time, the event terms minus d * log of the
// risk-set sum of exp(beta x).
double breslow_loglik(double beta, std::span<const double> x,
                      std::span<const SurvivalRecord> records) {
  std::vector<double> event_times;
  for (const auto& r : records)
    if (r.event) event_times.push_back(r.time_months);
  std::sort(event_times.begin(), event_times.end());
  event_times.erase(std::unique(event_times.begin(), event_times.end()), event_times.end());

  double ll = 0.0;
  for (double t : event_times) {
    int d = 0;
    double event_sum = 0.0, risk_sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].event && records[i].time_months == t) {
        ++d;
        event_sum += beta * x[i];
      }
      if (records[i].time_months >= t) risk_sum += std::exp(beta * x[i]);
    }
    ll += event_sum - d * std::log(risk_sum);
  }
  return ll;
}

// Golden-section maximizer over [-5, 5]; the partial likelihood is concave.
double golden_section_beta(std::span<const double> x,
                           std::span<const SurvivalRecord> records) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -5.0, b = 5.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = breslow_loglik(c, x, records), fd = breslow_loglik(d, x, records);
  for (int i = 0; i < 300 && b - a > 1e-10; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = breslow_loglik(c, x, records);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = breslow_loglik(d, x, records);
    }
  }
  return (a + b) / 2.0;
}

struct Pairs {
  long long concordant = 0, tied = 0, comparable = 0;
};

// All ordered pairs, straight from the concordance definition.
Pairs count_pairs(std::span<const double> pred, std::span<const SurvivalRecord> r) {
  Pairs out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (i == j) continue;
      bool comp = (r[i].time_months < r[j].time_months && r[i].event) ||
                  (r[i].time_months == r[j].time_months && r[i].event && !r[j].event);
      if (!comp) continue;
      ++out.comparable;
      if (pred[i] < pred[j])
        ++out.concordant;
      else if (pred[i] == pred[j])
        ++out.tied;
    }
  }
  return out;
}

std::vector<SurvivalRecord> signal_cohort(int n, std::uint64_t seed, std::vector<double>& x,
                                          double beta = 0.8, double censor_frac = 0.25) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  x.resize(n);
  std::vector<SurvivalRecord> recs(n);
  for (int i = 0; i < n; ++i) {
    x[i] = norm(rng);
    double u = std::max(unif(rng), 1e-12);
    double t = -std::log(u) / (0.1 * std::exp(beta * x[i]));
    recs[i] = {"s" + std::to_string(i), std::max(t, 1e-6), unif(rng) >= censor_frac};
  }
  return recs;
}

}  // namespace

TEST_CASE("km curve on hand examples") {
  std::vector<SurvivalRecord> r = {rec(1, true), rec(2, false), rec(3, true)};
  auto c = km_curve(r);
  REQUIRE(c.times == std::vector<double>{1, 3});
  CHECK(c.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(c.probs[1] == 0.0);
  CHECK(c.eval(0.5) == 1.0);
  CHECK(c.eval(1.0) == c.probs[0]);
  CHECK(c.eval(2.5) == c.probs[0]);
  CHECK(c.eval(3.0) == 0.0);
  c.validate();
}

TEST_CASE("km handles ties with events before censoring") {
  // The subject censored at t=2 is still at risk for the event at t=2.
  std::vector<SurvivalRecord> r = {rec(2, true), rec(2, false), rec(4, true)};
  auto c = km_curve(r);
  REQUIRE(c.times == std::vector<double>{2, 4});
  CHECK(c.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(c.probs[1] == 0.0);
}

TEST_CASE("censoring-only times add no step") {
  std::vector<SurvivalRecord> r = {rec(1, false), rec(2, false), rec(3, true)};
  auto c = km_curve(r);
  REQUIRE(c.times == std::vector<double>{3});
  CHECK(c.probs[0] == 0.0);
}

TEST_CASE("km requires at least one record") {
  std::vector<SurvivalRecord> none;
  CHECK_THROWS_AS(km_curve(none), Error);
}

TEST_CASE("km curve is a valid non-increasing step function on random data") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto r = testutil::random_cohort(40, seed);
    auto c = km_curve(r);
    c.validate();
    CHECK(std::is_sorted(c.times.begin(), c.times.end()));
    for (std::size_t i = 1; i < c.probs.size(); ++i) CHECK(c.probs[i] <= c.probs[i - 1]);
  }
}

TEST_CASE("median survival is the first time the curve reaches one half") {
  std::vector<SurvivalRecord> r = {rec(1, true), rec(2, true), rec(3, true), rec(4, true)};
  auto m = median_survival(r);
  REQUIRE(m.has_value());
  CHECK(*m == 2.0);  // S(2) = 0.5 exactly

  std::vector<SurvivalRecord> high = {rec(1, true), rec(5, false), rec(6, false)};
  CHECK(!median_survival(high).has_value());  // curve stops at 2/3
}

TEST_CASE("logrank of a group against itself is exactly zero") {
  std::vector<SurvivalRecord> g = {rec(1, true), rec(2, true), rec(3, true), rec(4, false)};
  auto res = logrank(g, g);
  CHECK(res.chi2 == 0.0);
  CHECK(res.p == 1.0);
  CHECK(!res.degenerate);
}

TEST_CASE("logrank matches a hand-computed table") {
  std::vector<SurvivalRecord> a = {rec(1, true), rec(2, true), rec(3, true)};
  std::vector<SurvivalRecord> b = {rec(4, true), rec(5, true), rec(6, true)};
  auto res = logrank(a, b);
  // O-E = 0.5 + 0.6 + 0.75; V = 0.25 + 0.24 + 0.1875
  double expect = (1.85 * 1.85) / 0.6775;
  CHECK(res.chi2 == doctest::Approx(expect).epsilon(1e-12));
  CHECK(res.p == doctest::Approx(chisq_sf(expect, 1)).epsilon(1e-12));
  CHECK(res.p < 0.05);
}

TEST_CASE("logrank is symmetric bitwise") {
  for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
    auto a = testutil::random_cohort(25, seed);
    auto b = testutil::random_cohort(18, seed + 100);
    auto ab = logrank(a, b);
    auto ba = logrank(b, a);
    CHECK(ab.chi2 == ba.chi2);
    CHECK(ab.p == ba.p);
  }
}

TEST_CASE("logrank with no events is degenerate") {
  std::vector<SurvivalRecord> a = {rec(1, false), rec(2, false)};
  std::vector<SurvivalRecord> b = {rec(3, false), rec(4, false)};
  auto res = logrank(a, b);
  CHECK(res.degenerate);
  CHECK(res.chi2 == 0.0);
  CHECK(res.p == 1.0);
}

TEST_CASE("logrank requires both groups non-empty") {
  std::vector<SurvivalRecord> a = {rec(1, true)};
  std::vector<SurvivalRecord> none;
  CHECK_THROWS_AS(logrank(a, none), Error);
  CHECK_THROWS_AS(logrank(none, a), Error);
}

TEST_CASE("cox on a constant covariate reports no variation") {
  std::vector<double> x(10, 3.5);
  auto r = testutil::random_cohort(10, 42);
  auto fit = cox_univariate(x, r);
  CHECK(fit.status == CoxStatus::NoVariation);
  CHECK(fit.beta == 0.0);
  CHECK(fit.p == 1.0);
  CHECK(fit.hr == 1.0);
}

TEST_CASE("cox maximizes the partial likelihood") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::vector<double> x;
    auto r = signal_cohort(40, seed, x);
    auto fit = cox_univariate(x, r);
    REQUIRE(fit.status == CoxStatus::Ok);
    CHECK(fit.converged);
    double gold = golden_section_beta(x, r);
    CHECK(std::fabs(fit.beta - gold) < 1e-4);
    CHECK(fit.loglik == doctest::Approx(breslow_loglik(fit.beta, x, r)).epsilon(1e-9));
    // Stationarity: central finite difference of the independent likelihood
    // at the fitted coefficient.
    double h = 1e-5;
    double grad =
        (breslow_loglik(fit.beta + h, x, r) - breslow_loglik(fit.beta - h, x, r)) / (2 * h);
    CHECK(std::fabs(grad) < 1e-6);
  }
}

TEST_CASE("cox wald interval brackets a doubled hazard") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x;
  std::vector<SurvivalRecord> r;
  for (int i = 0; i < 200; ++i) {
    double xi = (i % 2 == 0) ? 0.0 : 1.0;
    double rate = 0.1 * ((xi == 1.0) ? 2.0 : 1.0);
    double t = -std::log(std::max(unif(rng), 1e-12)) / rate;
    x.push_back(xi);
    r.push_back(rec(t, true));
  }
  auto fit = cox_univariate(x, r);
  REQUIRE(fit.status == CoxStatus::Ok);
  CHECK(fit.ci_low < 2.0);
  CHECK(fit.ci_high > 2.0);
  CHECK(fit.hr == doctest::Approx(std::exp(fit.beta)).epsilon(1e-15));
  CHECK(fit.ci_low == doctest::Approx(std::exp(fit.beta - 1.96 * fit.se)).epsilon(1e-12));
  CHECK(fit.ci_high == doctest::Approx(std::exp(fit.beta + 1.96 * fit.se)).epsilon(1e-12));
  CHECK(fit.p < 0.05);
}

TEST_CASE("cox is invariant under covariate shift") {
  std::vector<double> x;
  auto r = signal_cohort(35, 77, x);
  auto base = cox_univariate(x, r);
  std::vector<double> shifted = x;
  for (auto& v : shifted) v += 13.25;
  auto fit = cox_univariate(shifted, r);
  CHECK(fit.beta == doctest::Approx(base.beta).epsilon(1e-7));
  CHECK(fit.se == doctest::Approx(base.se).epsilon(1e-7));
  CHECK(fit.p == doctest::Approx(base.p).epsilon(1e-5));
}

TEST_CASE("cox rescales with the covariate") {
  std::vector<double> x;
  auto r = signal_cohort(35, 78, x);
  auto base = cox_univariate(x, r);
  std::vector<double> scaled = x;
  for (auto& v : scaled) v *= 4.0;
  auto fit = cox_univariate(scaled, r);
  CHECK(fit.beta == doctest::Approx(base.beta / 4.0).epsilon(1e-7));
  CHECK(fit.z == doctest::Approx(base.z).epsilon(1e-6));
  CHECK(fit.p == doctest::Approx(base.p).epsilon(1e-5));
}

TEST_CASE("cox flags monotone likelihoods as not converged") {
  // Covariate equal to minus the survival time with all events observed:
  // perfect separation, the likelihood increases without bound.
  std::vector<double> x;
  std::vector<SurvivalRecord> r;
  for (int i = 1; i <= 12; ++i) {
    r.push_back(rec(i, true));
    x.push_back(-double(i));
  }
  auto fit = cox_univariate(x, r);
  CHECK(fit.status == CoxStatus::NotConverged);
  CHECK(!fit.converged);
}

TEST_CASE("cox rejects mismatched input lengths") {
  std::vector<double> x = {1.0, 2.0};
  auto r = testutil::random_cohort(3, 9);
  CHECK_THROWS_AS(cox_univariate(x, r), Error);
}

TEST_CASE("c-index on perfectly ordered predictions") {
  std::vector<SurvivalRecord> r;
  std::vector<double> good, bad, flat;
  for (int i = 1; i <= 10; ++i) {
    r.push_back(rec(i, true));
    good.push_back(i);    // longer survival predicted longer
    bad.push_back(-i);
    flat.push_back(7.0);
  }
  CHECK(c_index(good, r) == 1.0);
  CHECK(c_index(bad, r) == 0.0);
  CHECK(c_index(flat, r) == 0.5);
}

TEST_CASE("c-index matches the all-pairs count exactly") {
  std::mt19937_64 rng(0xc1de);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = testutil::random_cohort(30, rng());
    std::vector<double> pred(r.size());
    for (auto& p : pred) {
      p = unif(rng);
      if (unif(rng) < 0.2) p = 0.5;  // force prediction ties
    }
    auto got = c_index(pred, r);
    auto pc = count_pairs(pred, r);
    REQUIRE(got.has_value());
    REQUIRE(pc.comparable > 0);
    double expect = double(2 * pc.concordant + pc.tied) / double(2 * pc.comparable);
    CHECK(*got == expect);
  }
}

TEST_CASE("c-index complement and monotone-transform properties") {
  auto r = testutil::random_cohort(40, 0xbeef);
  std::mt19937_64 rng(0xbeef);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> pred(r.size());
  for (auto& p : pred) p = unif(rng);

  auto c = c_index(pred, r);
  REQUIRE(c.has_value());
  std::vector<double> neg = pred;
  for (auto& p : neg) p = -p;
  auto cn = c_index(neg, r);
  REQUIRE(cn.has_value());
  CHECK(*c + *cn == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> warped = pred;
  for (auto& p : warped) p = 3.0 * p + 11.0;
  CHECK(c_index(warped, r) == *c);
}

TEST_CASE("c-index without comparable pairs is empty") {
  std::vector<SurvivalRecord> r = {rec(1, false), rec(2, false), rec(3, false)};
  std::vector<double> pred = {1, 2, 3};
  CHECK(!c_index(pred, r).has_value());
}

TEST_CASE("rmst on flat and step curves") {
  SurvivalCurve flat;  // constant 1
  CHECK(rmst(flat, 7.0) == 7.0);

  SurvivalCurve drop{{2.0}, {0.0}};
  CHECK(rmst(drop, 5.0) == 2.0);

  SurvivalCurve steps{{1.0, 3.0}, {0.6, 0.2}};
  CHECK(rmst(steps, 4.0) == doctest::Approx(1.0 + 0.6 * 2.0 + 0.2 * 1.0).epsilon(1e-12));
  // Horizon before the first drop.
  CHECK(rmst(steps, 0.5) == 0.5);
  CHECK_THROWS_AS(rmst(steps, 0.0), Error);
}

TEST_CASE("rmst agrees with midpoint evaluation over exact segments") {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    auto r = testutil::random_cohort(30, seed);
    auto curve = km_curve(r);
    double t_max = curve.times.empty() ? 10.0 : curve.times.back() * 0.8 + 1.0;
    // Independent integration: cut [0, t_max] at the step times, evaluate
    // the curve at each segment midpoint (constant there), accumulate.
    std::vector<double> cuts = {0.0};
    for (double t : curve.times)
      if (t < t_max) cuts.push_back(t);
    cuts.push_back(t_max);
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      area += curve.eval((cuts[i] + cuts[i + 1]) / 2.0) * (cuts[i + 1] - cuts[i]);
    CHECK(rmst(curve, t_max) == doctest::Approx(area).epsilon(1e-12));
  }
}

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-6));
  CHECK(normal_cdf(-1.959964) == doctest::Approx(0.025).epsilon(1e-6));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-10));
  for (double z : {-3.0, -0.7, 0.3, 2.5}) {
    CHECK(normal_cdf(z) + normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(normal_cdf(10.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(normal_cdf(-10.0) < 1e-12);
}

TEST_CASE("chi-squared tail reference values") {
  CHECK(chisq_sf(3.841459, 1) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chisq_sf(0.0, 1) == 1.0);
  // df = 2 has the closed form exp(-x/2).
  for (double v : {0.5, 1.0, 4.0, 9.0}) {
    CHECK(chisq_sf(v, 2) == doctest::Approx(std::exp(-v / 2.0)).epsilon(1e-10));
  }
  CHECK(chisq_sf(6.634897, 1) == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("regularized upper gamma closed forms") {
  for (double v : {0.1, 1.0, 2.5, 8.0}) {
    CHECK(gamma_q(1.0, v) == doctest::Approx(std::exp(-v)).epsilon(1e-12));
  }
  CHECK(gamma_q(3.0, 0.0) == 1.0);
}
