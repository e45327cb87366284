#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::pipeline {

struct SynthParams {
  int n = 100;
  std::vector<double> betas;   // per-feature log-hazard weights
  double baseline_rate = 0.1;  // exponential events per month at x = 0
  // Censoring time is uniform on (0, censor_horizon]; an infinite horizon
  // disables censoring entirely.
  double censor_horizon = 60.0;
  std::uint64_t seed = 0;
  std::string feature_prefix = "x";  // columns feature_prefix + "1".."p"
  std::string id_prefix = "s";
};

struct SynthCohort {
  volio::FeatureTable features;
  std::vector<volio::SurvivalRecord> records;
};

// Synthetic proportional-hazards cohort: features i.i.d. standard normal,
// survival time exponential with rate baseline_rate * exp(betas . x),
// censoring uniform on (0, censor_horizon], observed time the smaller of
// the two. Fully determined by the seed. Times are strictly positive.
SynthCohort synth_cohort(const SynthParams& params);

}  // namespace gliomorph::pipeline
