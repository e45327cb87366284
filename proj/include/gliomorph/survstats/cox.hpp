#pragma once

#include <span>

#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::survstats {

using volio::SurvivalRecord;

enum class CoxStatus {
  Ok,
  NoVariation,   // constant covariate; beta pinned to 0, p = 1
  NotConverged,  // |beta| ran away (monotone likelihood) or iteration cap hit
};

struct CoxFit {
  double beta = 0.0;
  double se = 0.0;
  double z = 0.0;
  double p = 1.0;
  double hr = 1.0;
  double ci_low = 1.0;   // exp(beta - 1.96 se)
  double ci_high = 1.0;  // exp(beta + 1.96 se)
  bool converged = false;
  int iterations = 0;
  CoxStatus status = CoxStatus::Ok;
  double loglik = 0.0;
};

// Univariate Cox proportional hazards fit. Breslow handling of tied event
// times; Newton-Raphson from beta = 0 with step halving when a step lowers
// the partial likelihood; stops when |delta beta| < 1e-9 or
// |delta loglik| < 1e-9, at 50 iterations, or when |beta| exceeds 20
// (flagged NotConverged). Wald statistics: se from the observed information,
// two-sided p = 2 (1 - Phi(|z|)).
CoxFit cox_univariate(std::span<const double> x, std::span<const SurvivalRecord> records);

}  // namespace gliomorph::survstats
