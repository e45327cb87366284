#include "gliomorph/pipeline/select.hpp"

#include "gliomorph/error.hpp"

namespace gliomorph::pipeline {

std::vector<SelectionEntry> screen_features(const volio::FeatureTable& features,
                                            std::span<const volio::SurvivalRecord> records,
                                            double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Validation, "alpha must be in (0, 1)");
  if (features.n_rows() != records.size())
    fail(ErrorKind::Validation, "feature rows and records differ in length");

  std::vector<SelectionEntry> out;
  out.reserve(features.n_cols());
  for (const auto& col : features.columns()) {
    SelectionEntry entry;
    entry.feature = col;
    entry.fit = survstats::cox_univariate(features.column_values(col), records);
    entry.selected = entry.fit.converged && entry.fit.status == survstats::CoxStatus::Ok &&
                     entry.fit.p < alpha;
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<std::string> select_features(const volio::FeatureTable& features,
                                         std::span<const volio::SurvivalRecord> records,
                                         double alpha) {
  std::vector<std::string> names;
  for (auto& entry : screen_features(features, records, alpha))
    if (entry.selected) names.push_back(entry.feature);
  return names;
}

}  // namespace gliomorph::pipeline
