#pragma once

#include <span>
#include <string>
#include <vector>

#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::pipeline {

struct DecileOptions {
  double alpha = 0.05;  // significance flag cutoff for the log-rank p
  // A censored subject below the cohort median has unknown short/long
  // status. Default drops it from both numerator and denominator; with
  // this set it stays in the denominator (counted as not short).
  bool censored_below_median_in_denominator = false;
};

// One feature's top-decile summary. H = subjects at or above the feature's
// 90th percentile (nearest rank). pct_short = percent of H that died before
// the cohort's median survival. A row is undefined when the complement of H
// is empty (constant feature); pct_short alone is missing when no subject
// in H has known short/long status.
struct DecileRow {
  std::string feature;
  double cutoff = 0.0;  // 90th percentile of the feature
  int n_high = 0;
  int n_rest = 0;
  bool defined = false;
  double pct_short = 0.0;  // missing_value() when unknown
  double logrank_chi2 = 0.0;
  double logrank_p = 1.0;
  bool significant = false;  // defined and logrank_p < alpha
};

struct DecileResult {
  double cohort_median = 0.0;
  std::vector<DecileRow> rows;  // feature column order
};

// Splits the cohort per feature at the 90th percentile and compares the
// top decile against the rest: percentage of short survivors (death before
// the cohort median) within the top group, and the log-rank test between
// the groups. Requires >= 10 subjects and a defined cohort median.
DecileResult top_decile_analysis(const volio::FeatureTable& features,
                                 std::span<const volio::SurvivalRecord> records,
                                 const DecileOptions& options = {});

}  // namespace gliomorph::pipeline
