#pragma once

#include <optional>
#include <span>

#include "gliomorph/survstats/survival_curve.hpp"
#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::survstats {

using volio::SurvivalRecord;

// Product-limit survival estimate. At each distinct event time t with d
// events among n at risk, S is multiplied by (1 - d/n). Subjects censored at
// t are still at risk at t (events precede censoring at ties) and leave the
// risk set afterwards. Censoring-only times add no step. Requires at least
// one record.
SurvivalCurve km_curve(std::span<const SurvivalRecord> records);

// Smallest observed time where the product-limit curve is <= 0.5; empty if
// the curve never reaches 0.5.
std::optional<double> median_survival(std::span<const SurvivalRecord> records);

}  // namespace gliomorph::survstats
