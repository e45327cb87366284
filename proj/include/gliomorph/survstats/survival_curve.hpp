#pragma once

#include <vector>

namespace gliomorph::survstats {

// Right-continuous step function S(t). S(t) = 1 for t < times[0];
// S(t) = probs[k] for times[k] <= t < times[k+1]. An empty curve is the
// constant function 1. times are strictly increasing and positive; probs are
// non-increasing within [0, 1].
struct SurvivalCurve {
  std::vector<double> times;
  std::vector<double> probs;

  double eval(double t) const {
    // last index with times[i] <= t
    std::size_t lo = 0, hi = times.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (times[mid] <= t)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo == 0 ? 1.0 : probs[lo - 1];
  }

  void validate() const;
};

// Area under the step curve from 0 to t_max (restricted mean survival time).
// Requires t_max > 0.
double rmst(const SurvivalCurve& curve, double t_max);

}  // namespace gliomorph::survstats
