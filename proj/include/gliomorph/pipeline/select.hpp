#pragma once

#include <span>
#include <string>
#include <vector>

#include "gliomorph/survstats/cox.hpp"
#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::pipeline {

struct SelectionEntry {
  std::string feature;
  survstats::CoxFit fit;
  bool selected = false;  // converged with two-sided Wald p < alpha
};

// Univariate Cox screen over every column of `features`, in column order.
// A feature is selected when its fit converged and its Wald p-value is
// below alpha; non-converged fits are dropped (never selected) and flagged
// in their entry.
std::vector<SelectionEntry> screen_features(const volio::FeatureTable& features,
                                            std::span<const volio::SurvivalRecord> records,
                                            double alpha = 0.05);

// Names of the selected features, preserving column order.
std::vector<std::string> select_features(const volio::FeatureTable& features,
                                         std::span<const volio::SurvivalRecord> records,
                                         double alpha = 0.05);

}  // namespace gliomorph::pipeline
