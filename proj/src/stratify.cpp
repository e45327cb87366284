#include "gliomorph/pipeline/stratify.hpp"

#include <algorithm>
#include <cmath>

#include "gliomorph/error.hpp"
#include "gliomorph/survstats/km.hpp"
#include "gliomorph/survstats/logrank.hpp"

namespace gliomorph::pipeline {

std::optional<StratificationResult> stratify(std::span<const double> predictions,
                                             std::span<const volio::SurvivalRecord> records,
                                             double min_group_frac) {
  const int n = static_cast<int>(records.size());
  if (predictions.size() != records.size())
    fail(ErrorKind::Validation, "predictions and records differ in length");
  if (n < 2) fail(ErrorKind::Validation, "stratify requires at least 2 subjects");
  if (!(min_group_frac > 0.0 && min_group_frac <= 0.5))
    fail(ErrorKind::Validation, "min_group_frac must be in (0, 0.5]");
  for (double p : predictions)
    if (!std::isfinite(p)) fail(ErrorKind::Validation, "non-finite prediction");

  std::vector<double> distinct(predictions.begin(), predictions.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) return std::nullopt;

  // ceil(frac * n) with a nudge so exact fractions are not pushed one up by
  // floating-point excess (0.10 * 150 evaluates slightly above 15).
  const int min_size = static_cast<int>(std::ceil(min_group_frac * n - 1e-9));

  auto split = [&](double threshold) {
    std::pair<std::vector<volio::SurvivalRecord>, std::vector<volio::SurvivalRecord>> groups;
    for (int i = 0; i < n; ++i) {
      if (predictions[i] <= threshold)
        groups.first.push_back(records[i]);
      else
        groups.second.push_back(records[i]);
    }
    return groups;
  };

  bool found = false;
  double best_threshold = 0.0;
  survstats::LogRankResult best_test;
  for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
    double threshold = distinct[k] + (distinct[k + 1] - distinct[k]) / 2;
    auto [high, low] = split(threshold);
    if (static_cast<int>(high.size()) < min_size || static_cast<int>(low.size()) < min_size)
      continue;
    auto test = survstats::logrank(high, low);
    if (!found || test.p < best_test.p) {
      found = true;
      best_threshold = threshold;
      best_test = test;
    }
  }
  if (!found) return std::nullopt;

  StratificationResult result;
  result.threshold = best_threshold;
  result.logrank_chi2 = best_test.chi2;
  result.logrank_p = best_test.p;

  auto [high, low] = split(best_threshold);
  result.n_high = static_cast<int>(high.size());
  result.n_low = static_cast<int>(low.size());
  result.high_curve = survstats::km_curve(high);
  result.low_curve = survstats::km_curve(low);
  result.high_risk.resize(n);
  std::vector<double> indicator(n);
  for (int i = 0; i < n; ++i) {
    bool is_high = predictions[i] <= best_threshold;
    result.high_risk[i] = is_high;
    indicator[i] = is_high ? 1.0 : 0.0;
  }
  result.group_fit = survstats::cox_univariate(indicator, records);
  result.hr = result.group_fit.hr;
  result.hr_ci_low = result.group_fit.ci_low;
  result.hr_ci_high = result.group_fit.ci_high;
  return result;
}

}  // namespace gliomorph::pipeline
