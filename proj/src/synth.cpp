#include "gliomorph/pipeline/synth.hpp"

#include <cmath>
#include <limits>

#include "gliomorph/detail/rng.hpp"
#include "gliomorph/error.hpp"

namespace gliomorph::pipeline {

SynthCohort synth_cohort(const SynthParams& params) {
  if (params.n < 2) fail(ErrorKind::Validation, "synth_cohort requires n >= 2");
  if (!(params.baseline_rate > 0.0))
    fail(ErrorKind::Validation, "baseline_rate must be positive");
  if (!(params.censor_horizon > 0.0))
    fail(ErrorKind::Validation, "censor_horizon must be positive (may be infinite)");

  const int p = static_cast<int>(params.betas.size());
  std::vector<std::string> columns(p);
  for (int j = 0; j < p; ++j) columns[j] = params.feature_prefix + std::to_string(j + 1);

  int width = 1;
  for (int v = params.n; v >= 10; v /= 10) ++width;

  SynthCohort cohort;
  cohort.features = volio::FeatureTable{columns};
  detail::Rng rng(detail::derive_seed(params.seed, 0x7359));
  for (int i = 0; i < params.n; ++i) {
    std::string id = std::to_string(i + 1);
    id.insert(0, width - id.size(), '0');
    id.insert(0, params.id_prefix);

    std::vector<double> x(p);
    double log_rel_hazard = 0.0;
    for (int j = 0; j < p; ++j) {
      x[j] = rng.next_normal();
      log_rel_hazard += params.betas[j] * x[j];
    }
    double rate = params.baseline_rate * std::exp(log_rel_hazard);
    double survival = -std::log(rng.next_open_unit()) / rate;
    // Extreme relative hazards can underflow the division; keep times
    // strictly positive as promised.
    if (!(survival > 0.0)) survival = std::numeric_limits<double>::min();

    volio::SurvivalRecord rec;
    rec.subject_id = id;
    if (std::isinf(params.censor_horizon)) {
      rec.time_months = survival;
      rec.event = true;
    } else {
      double censor = params.censor_horizon * rng.next_half_open_unit();
      rec.time_months = std::min(survival, censor);
      rec.event = survival <= censor;
    }
    cohort.features.add_row(id, std::move(x));
    cohort.records.push_back(std::move(rec));
  }
  return cohort;
}

}  // namespace gliomorph::pipeline
