#include "gliomorph/survstats/logrank.hpp"

#include <algorithm>
#include <vector>

#include "gliomorph/error.hpp"
#include "gliomorph/survstats/special.hpp"

namespace gliomorph::survstats {

LogRankResult logrank(std::span<const SurvivalRecord> a, std::span<const SurvivalRecord> b) {
  if (a.empty() || b.empty()) fail(ErrorKind::Validation, "logrank requires two non-empty groups");

  struct Obs {
    double time;
    bool event;
    bool in_a;
  };
  std::vector<Obs> pooled;
  pooled.reserve(a.size() + b.size());
  for (const auto& r : a) pooled.push_back({r.time_months, r.event, true});
  for (const auto& r : b) pooled.push_back({r.time_months, r.event, false});
  for (const auto& o : pooled)
    if (!(o.time > 0.0)) fail(ErrorKind::Validation, "survival times must be positive");
  std::sort(pooled.begin(), pooled.end(),
            [](const Obs& x, const Obs& y) { return x.time < y.time; });

  // Per distinct event time: u = (d_a*n - d*n_a)/n so that swapping the
  // groups negates every term exactly, and the variance is written in the
  // symmetric n_a*n_b form. This keeps the statistic bit-identical under
  // argument swap.
  double u_sum = 0.0;
  double v_sum = 0.0;
  std::int64_t n_a = static_cast<std::int64_t>(a.size());
  std::int64_t n_total = static_cast<std::int64_t>(pooled.size());
  std::size_t i = 0;
  while (i < pooled.size()) {
    double t = pooled[i].time;
    std::int64_t d = 0, d_a = 0, leave = 0, leave_a = 0;
    while (i < pooled.size() && pooled[i].time == t) {
      if (pooled[i].event) {
        ++d;
        if (pooled[i].in_a) ++d_a;
      }
      ++leave;
      if (pooled[i].in_a) ++leave_a;
      ++i;
    }
    if (d > 0) {
      double n = static_cast<double>(n_total);
      std::int64_t n_b = n_total - n_a;
      u_sum += static_cast<double>(d_a * n_total - d * n_a) / n;
      if (n_total > 1) {
        v_sum += static_cast<double>(d) * static_cast<double>(n_a * n_b) *
                 static_cast<double>(n_total - d) /
                 (n * n * static_cast<double>(n_total - 1));
      }
    }
    n_total -= leave;
    n_a -= leave_a;
  }

  LogRankResult res;
  if (v_sum > 0.0) {
    res.chi2 = u_sum * u_sum / v_sum;
    res.p = chisq_sf(res.chi2, 1.0);
    res.degenerate = false;
  } else {
    res.chi2 = 0.0;
    res.p = 1.0;
    res.degenerate = true;
  }
  return res;
}

}  // namespace gliomorph::survstats
