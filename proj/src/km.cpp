#include "gliomorph/survstats/km.hpp"

#include <algorithm>
#include <vector>

#include "gliomorph/error.hpp"

namespace gliomorph::survstats {

SurvivalCurve km_curve(std::span<const SurvivalRecord> records) {
  if (records.empty()) fail(ErrorKind::Validation, "km_curve requires at least one record");
  std::vector<std::pair<double, bool>> obs;
  obs.reserve(records.size());
  for (const auto& r : records) {
    if (!(r.time_months > 0.0)) fail(ErrorKind::Validation, "survival times must be positive");
    obs.emplace_back(r.time_months, r.event);
  }
  std::sort(obs.begin(), obs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  SurvivalCurve curve;
  double s = 1.0;
  std::size_t i = 0;
  std::size_t at_risk = obs.size();
  while (i < obs.size()) {
    double t = obs[i].first;
    std::size_t deaths = 0, leaving = 0;
    while (i < obs.size() && obs[i].first == t) {
      deaths += obs[i].second ? 1 : 0;
      ++leaving;
      ++i;
    }
    if (deaths > 0) {
      s *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
      curve.times.push_back(t);
      curve.probs.push_back(s);
    }
    at_risk -= leaving;
  }
  return curve;
}

std::optional<double> median_survival(std::span<const SurvivalRecord> records) {
  SurvivalCurve curve = km_curve(records);
  for (std::size_t i = 0; i < curve.times.size(); ++i)
    if (curve.probs[i] <= 0.5) return curve.times[i];
  return std::nullopt;
}

}  // namespace gliomorph::survstats
