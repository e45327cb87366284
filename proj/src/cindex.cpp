#include "gliomorph/survstats/cindex.hpp"

#include <cmath>
#include <cstdint>

#include "gliomorph/error.hpp"

namespace gliomorph::survstats {

std::optional<double> c_index(std::span<const double> predictions,
                              std::span<const SurvivalRecord> records) {
  if (predictions.size() != records.size())
    fail(ErrorKind::Validation, "predictions and records differ in length");
  for (double p : predictions)
    if (std::isnan(p)) fail(ErrorKind::Validation, "predictions must not be missing");

  std::int64_t comparable = 0, concordant = 0, tied = 0;
  std::size_t n = records.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& ri = records[i];
      const auto& rj = records[j];
      // i is the "earlier" member of the pair
      bool cmp = (ri.time_months < rj.time_months && ri.event) ||
                 (ri.time_months == rj.time_months && ri.event && !rj.event);
      if (!cmp) continue;
      ++comparable;
      if (predictions[i] < predictions[j])
        ++concordant;
      else if (predictions[i] == predictions[j])
        ++tied;
    }
  }
  if (comparable == 0) return std::nullopt;
  return static_cast<double>(2 * concordant + tied) / static_cast<double>(2 * comparable);
}

}  // namespace gliomorph::survstats
