#include "gliomorph/survstats/survival_curve.hpp"

#include <algorithm>

#include "gliomorph/error.hpp"

namespace gliomorph::survstats {

void SurvivalCurve::validate() const {
  if (times.size() != probs.size())
    fail(ErrorKind::Validation, "curve times and probs differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) fail(ErrorKind::Validation, "curve times must be positive");
    if (i > 0 && !(times[i] > times[i - 1]))
      fail(ErrorKind::Validation, "curve times must be strictly increasing");
    if (!(probs[i] >= 0.0) || !(probs[i] <= 1.0))
      fail(ErrorKind::Validation, "curve probabilities must lie in [0, 1]");
    if (i > 0 && probs[i] > probs[i - 1])
      fail(ErrorKind::Validation, "curve probabilities must be non-increasing");
  }
}

double rmst(const SurvivalCurve& curve, double t_max) {
  if (!(t_max > 0.0)) fail(ErrorKind::Validation, "rmst requires t_max > 0");
  double area = 0.0;
  double prev_t = 0.0;
  double prev_s = 1.0;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    double t = std::min(curve.times[i], t_max);
    if (t > prev_t) area += (t - prev_t) * prev_s;
    if (curve.times[i] >= t_max) return area;
    prev_t = curve.times[i];
    prev_s = curve.probs[i];
  }
  if (t_max > prev_t) area += (t_max - prev_t) * prev_s;
  return area;
}

}  // namespace gliomorph::survstats
