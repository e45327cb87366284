#include "gliomorph/survstats/cox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gliomorph/error.hpp"
#include "gliomorph/survstats/special.hpp"

namespace gliomorph::survstats {

namespace {

constexpr double kBetaTol = 1e-9;
constexpr double kLoglikTol = 1e-9;
constexpr int kMaxIterations = 50;
constexpr double kBetaRunaway = 20.0;

struct Sorted {
  std::vector<double> x;      // covariate, ascending time order
  std::vector<double> time;
  std::vector<bool> event;
};

// Breslow log partial likelihood with gradient and observed information.
// One descending sweep over times; subjects enter the risk sums when their
// time is reached, then every event at that time contributes against the
// same sums.
struct Evaluation {
  double loglik;
  double gradient;
  double information;
};

Evaluation evaluate(const Sorted& d, double beta) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  double ll = 0.0, grad = 0.0, info = 0.0;
  std::size_t n = d.x.size();
  std::size_t i = n;
  while (i > 0) {
    std::size_t block_end = i;  // one past the last record of this tied time
    double t = d.time[i - 1];
    while (i > 0 && d.time[i - 1] == t) --i;
    for (std::size_t j = i; j < block_end; ++j) {
      double w = std::exp(beta * d.x[j]);
      s0 += w;
      s1 += d.x[j] * w;
      s2 += d.x[j] * d.x[j] * w;
    }
    int deaths = 0;
    double x_sum = 0.0;
    for (std::size_t j = i; j < block_end; ++j) {
      if (d.event[j]) {
        ++deaths;
        x_sum += d.x[j];
      }
    }
    if (deaths > 0) {
      double mean = s1 / s0;
      ll += beta * x_sum - deaths * std::log(s0);
      grad += x_sum - deaths * mean;
      info += deaths * (s2 / s0 - mean * mean);
    }
  }
  return {ll, grad, info};
}

CoxFit finish(double beta_std, double scale, const Evaluation& ev, int iterations,
              bool converged, CoxStatus status) {
  CoxFit fit;
  fit.iterations = iterations;
  fit.converged = converged;
  fit.status = status;
  fit.loglik = ev.loglik;
  fit.beta = beta_std / scale;
  double se_std = ev.information > 0.0 ? 1.0 / std::sqrt(ev.information)
                                       : std::numeric_limits<double>::infinity();
  fit.se = se_std / scale;
  fit.z = std::isinf(fit.se) ? 0.0 : fit.beta / fit.se;
  // 2 (1 - Phi(|z|)), evaluated through erfc to keep tail precision
  fit.p = std::erfc(std::fabs(fit.z) * 0.7071067811865476);
  fit.hr = std::exp(fit.beta);
  fit.ci_low = std::exp(fit.beta - 1.96 * fit.se);
  fit.ci_high = std::exp(fit.beta + 1.96 * fit.se);
  return fit;
}

}  // namespace

CoxFit cox_univariate(std::span<const double> x, std::span<const SurvivalRecord> records) {
  if (x.size() != records.size())
    fail(ErrorKind::Validation, "covariate and record counts differ");
  if (records.empty()) fail(ErrorKind::Validation, "cox_univariate requires records");
  bool any_event = false;
  for (const auto& r : records) {
    if (!(r.time_months > 0.0)) fail(ErrorKind::Validation, "survival times must be positive");
    any_event |= r.event;
  }
  if (!any_event) fail(ErrorKind::Validation, "cox_univariate requires at least one event");
  for (double v : x)
    if (!std::isfinite(v)) fail(ErrorKind::Validation, "covariate values must be finite");

  std::size_t n = records.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);

  if (var == 0.0) {
    CoxFit fit;
    fit.status = CoxStatus::NoVariation;
    fit.converged = true;
    fit.se = std::numeric_limits<double>::infinity();
    fit.ci_low = 0.0;
    fit.ci_high = std::numeric_limits<double>::infinity();
    return fit;
  }

  // Fit on the centered, unit-variance covariate and map back; the MLE is
  // equivariant and the conditioning is far better.
  double sd = std::sqrt(var);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&records](std::size_t a, std::size_t b) {
    return records[a].time_months < records[b].time_months;
  });
  Sorted d;
  d.x.resize(n);
  d.time.resize(n);
  d.event.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.x[i] = (x[order[i]] - mean) / sd;
    d.time[i] = records[order[i]].time_months;
    d.event[i] = records[order[i]].event;
  }

  double beta = 0.0;
  Evaluation ev = evaluate(d, beta);
  int iter = 0;
  while (iter < kMaxIterations) {
    ++iter;
    if (!(ev.information > 0.0))
      return finish(beta, sd, ev, iter, false, CoxStatus::NotConverged);
    double step = ev.gradient / ev.information;
    double candidate = beta + step;
    Evaluation cand_ev = evaluate(d, candidate);
    int halvings = 0;
    while ((!std::isfinite(cand_ev.loglik) || cand_ev.loglik < ev.loglik) && halvings < 40) {
      step *= 0.5;
      candidate = beta + step;
      cand_ev = evaluate(d, candidate);
      ++halvings;
    }
    double delta_ll = cand_ev.loglik - ev.loglik;
    double delta_beta_raw = std::fabs(candidate - beta) / sd;
    beta = candidate;
    ev = cand_ev;
    if (std::fabs(beta / sd) > kBetaRunaway)
      return finish(beta, sd, ev, iter, false, CoxStatus::NotConverged);
    if (delta_beta_raw < kBetaTol || std::fabs(delta_ll) < kLoglikTol)
      return finish(beta, sd, ev, iter, true, CoxStatus::Ok);
  }
  return finish(beta, sd, ev, kMaxIterations, false, CoxStatus::NotConverged);
}

}  // namespace gliomorph::survstats
