#pragma once

#include <span>

#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::survstats {

using volio::SurvivalRecord;

struct LogRankResult {
  double chi2 = 0.0;
  double p = 1.0;
  // True when the statistic could not be formed (total variance zero, e.g.
  // no events); chi2 is then 0 and p is 1.
  bool degenerate = false;
};

// Two-sample log-rank test. Observed-minus-expected events in group a are
// accumulated over the pooled distinct event times with the hypergeometric
// variance; chi2 = (O-E)^2 / V, p from the chi-squared upper tail with one
// degree of freedom. Symmetric in its arguments. Requires both groups
// non-empty.
LogRankResult logrank(std::span<const SurvivalRecord> a, std::span<const SurvivalRecord> b);

}  // namespace gliomorph::survstats
