#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gliomorph/survstats/cox.hpp"
#include "gliomorph/survstats/survival_curve.hpp"
#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::pipeline {

// Two-group split of a cohort at a prediction threshold. High risk means
// predicted expected survival at or below the threshold, so a genuine
// signal yields hr > 1.
struct StratificationResult {
  double threshold = 0.0;  // strictly between two observed predictions
  double logrank_chi2 = 0.0;
  double logrank_p = 1.0;
  survstats::CoxFit group_fit;  // univariate Cox on the high-risk indicator
  double hr = 1.0;
  double hr_ci_low = 0.0;
  double hr_ci_high = 0.0;
  survstats::SurvivalCurve high_curve, low_curve;
  int n_high = 0, n_low = 0;
  std::vector<bool> high_risk;  // per subject, record order
};

// Threshold search over midpoints between consecutive distinct predictions:
// keeps candidates leaving at least ceil(min_group_frac * N) subjects on
// each side, picks the one minimizing the log-rank p between the groups
// (ties go to the smaller threshold), then reports the log-rank test, the
// group Kaplan-Meier curves, and the hazard ratio of high vs low risk with
// its 95% interval. Returns nullopt when no candidate satisfies the size
// constraint (for example, all predictions equal).
std::optional<StratificationResult> stratify(std::span<const double> predictions,
                                             std::span<const volio::SurvivalRecord> records,
                                             double min_group_frac = 0.10);

}  // namespace gliomorph::pipeline
