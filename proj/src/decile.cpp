#include "gliomorph/pipeline/decile.hpp"

#include <algorithm>
#include <cmath>

#include "gliomorph/error.hpp"
#include "gliomorph/survstats/km.hpp"
#include "gliomorph/survstats/logrank.hpp"

namespace gliomorph::pipeline {

DecileResult top_decile_analysis(const volio::FeatureTable& features,
                                 std::span<const volio::SurvivalRecord> records,
                                 const DecileOptions& options) {
  const int n = static_cast<int>(records.size());
  if (features.n_rows() != records.size())
    fail(ErrorKind::Validation, "feature rows and records differ in length");
  for (int i = 0; i < n; ++i) {
    if (features.subject_ids()[i] != records[i].subject_id)
      fail(ErrorKind::Validation, "feature table and cohort subject order differ");
  }
  if (n < 10) fail(ErrorKind::Validation, "top-decile analysis requires at least 10 subjects");
  if (features.has_missing()) fail(ErrorKind::Validation, "feature table has missing values");
  if (!(options.alpha > 0.0 && options.alpha < 1.0))
    fail(ErrorKind::Validation, "alpha must be in (0, 1)");

  auto median = survstats::median_survival(records);
  if (!median) fail(ErrorKind::Data, "cohort median survival is undefined");

  DecileResult result;
  result.cohort_median = *median;
  for (std::size_t c = 0; c < features.columns().size(); ++c) {
    DecileRow row;
    row.feature = features.columns()[c];

    std::vector<double> sorted = features.column_values(row.feature);
    std::sort(sorted.begin(), sorted.end());
    int rank = (9 * n + 9) / 10;  // ceil(0.9 n), 1-based nearest rank
    row.cutoff = sorted[rank - 1];

    std::vector<volio::SurvivalRecord> top, rest;
    int n_short = 0, n_known = 0;
    for (int i = 0; i < n; ++i) {
      if (features.value(i, c) < row.cutoff) {
        rest.push_back(records[i]);
        continue;
      }
      top.push_back(records[i]);
      const auto& r = records[i];
      if (r.event && r.time_months < *median) {
        ++n_short;
        ++n_known;
      } else if (r.event || r.time_months >= *median) {
        ++n_known;
      } else if (options.censored_below_median_in_denominator) {
        ++n_known;
      }
    }
    row.n_high = static_cast<int>(top.size());
    row.n_rest = static_cast<int>(rest.size());
    row.pct_short =
        n_known > 0 ? 100.0 * n_short / n_known : volio::missing_value();
    row.defined = !top.empty() && !rest.empty();
    if (row.defined) {
      auto test = survstats::logrank(top, rest);
      row.logrank_chi2 = test.chi2;
      row.logrank_p = test.p;
      row.significant = test.p < options.alpha;
    } else {
      row.logrank_chi2 = volio::missing_value();
      row.logrank_p = volio::missing_value();
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace gliomorph::pipeline
