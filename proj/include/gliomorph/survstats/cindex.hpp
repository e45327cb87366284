#pragma once

#include <optional>
#include <span>

#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::survstats {

using volio::SurvivalRecord;

// Harrell's concordance index where predictions are expected survival
// (larger prediction = longer expected survival). A pair is comparable when
// the earlier subject's event was observed: t_i < t_j with event_i, or
// t_i == t_j with event_i and not event_j. A comparable pair is concordant
// when the earlier subject has the smaller prediction; prediction ties score
// 0.5. Returns empty when no pair is comparable.
std::optional<double> c_index(std::span<const double> predictions,
                              std::span<const SurvivalRecord> records);

}  // namespace gliomorph::survstats
