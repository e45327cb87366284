#include "gliomorph/pipeline/cv.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>

#include "gliomorph/detail/parallel.hpp"
#include "gliomorph/detail/rng.hpp"
#include "gliomorph/error.hpp"
#include "gliomorph/pipeline/select.hpp"
#include "gliomorph/survstats/cindex.hpp"

namespace gliomorph::pipeline {

namespace {

struct RepeatOutcome {
  bool aborted = false;
  std::string diagnostic;
  double cindex = 0.0;
  std::vector<double> oof;            // per subject
  std::vector<int> selection_counts;  // aligned to roles.hd95
  int fallback_folds = 0;
};

}  // namespace

CVResult run_cv(const volio::FeatureTable& features, std::span<const volio::SurvivalRecord> records,
                const FeatureSetSpec& spec, const CVOptions& options) {
  const int n = static_cast<int>(records.size());
  if (n < 10) fail(ErrorKind::Validation, "run_cv requires at least 10 subjects");
  if (features.n_rows() != records.size())
    fail(ErrorKind::Validation, "feature rows and records differ in length");
  for (int i = 0; i < n; ++i) {
    if (features.subject_ids()[i] != records[i].subject_id)
      fail(ErrorKind::Validation, "feature table and cohort subject order differ");
  }
  if (options.repeats < 1) fail(ErrorKind::Validation, "repeats must be >= 1");

  const ColumnRoles roles = ColumnRoles::infer(features);
  const bool wants_hd95 = spec.contains(FeatureGroup::Hd95);
  const bool hd95_only = wants_hd95 && spec.groups.size() == 1;
  roles.resolve(spec);  // validate the groups exist before spending any work

  const int k_folds = (n + 4) / 5;
  std::mutex observer_mutex;

  std::vector<RepeatOutcome> outcomes(options.repeats);
  detail::parallel_for(static_cast<std::size_t>(options.repeats), [&](std::size_t r) {
    RepeatOutcome& out = outcomes[r];
    out.oof.assign(n, volio::missing_value());
    out.selection_counts.assign(roles.hd95.size(), 0);

    detail::Rng rng(detail::derive_seed(options.seed, r));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);

    for (int k = 0; k < k_folds; ++k) {
      int begin = 5 * k;
      int end = std::min(begin + 5, n);
      std::vector<int> test_idx(perm.begin() + begin, perm.begin() + end);
      std::sort(test_idx.begin(), test_idx.end());
      std::vector<int> train_idx;
      train_idx.reserve(n - test_idx.size());
      for (int i = 0; i < n; ++i)
        if (!std::binary_search(test_idx.begin(), test_idx.end(), i)) train_idx.push_back(i);

      std::vector<volio::SurvivalRecord> train_records;
      train_records.reserve(train_idx.size());
      bool any_event = false;
      for (int i : train_idx) {
        train_records.push_back(records[i]);
        any_event |= records[i].event;
      }
      if (!any_event) {
        out.aborted = true;
        out.diagnostic = "repeat " + std::to_string(r) + " fold " + std::to_string(k) +
                         ": training folds contain no events";
        return;
      }

      FoldLog log;
      log.repeat = static_cast<int>(r);
      log.fold = k;
      for (int i : train_idx) log.train_ids.push_back(records[i].subject_id);
      for (int i : test_idx) log.test_ids.push_back(records[i].subject_id);

      std::vector<std::string> selected;
      if (wants_hd95) {
        auto train_hd95 =
            features.select_rows(train_idx).select_columns(roles.hd95);
        selected = select_features(train_hd95, train_records, options.alpha);
        for (std::size_t j = 0; j < roles.hd95.size(); ++j)
          if (std::find(selected.begin(), selected.end(), roles.hd95[j]) != selected.end())
            ++out.selection_counts[j];
        log.selected = selected;
        if (selected.empty() && hd95_only) {
          selected = roles.hd95;  // nothing passed the screen; keep the model fittable
          log.used_fallback = true;
          ++out.fallback_folds;
        }
      }

      auto cols = roles.resolve(spec, wants_hd95 ? &selected : nullptr);
      if (cols.empty()) {
        out.aborted = true;
        out.diagnostic = "repeat " + std::to_string(r) + " fold " + std::to_string(k) +
                         ": feature set resolved to no columns";
        return;
      }

      rsf::ForestParams params = options.forest;
      params.seed = detail::derive_seed(options.seed, r, static_cast<std::uint64_t>(k) + 1);
      auto model =
          rsf::fit(features.select_rows(train_idx).select_columns(cols), train_records, params);

      for (int i : test_idx) {
        if (options.oracle_inject) {
          out.oof[i] = records[i].time_months;
          continue;
        }
        std::vector<double> row(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
          row[c] = features.value(i, features.column_index(cols[c]));
        out.oof[i] = rsf::predict_expected(model, row);
      }

      if (options.observer) {
        std::lock_guard<std::mutex> lock(observer_mutex);
        options.observer(log);
      }
    }

    for (int i = 0; i < n; ++i) {
      if (volio::is_missing(out.oof[i])) {
        out.aborted = true;
        out.diagnostic = "repeat " + std::to_string(r) + ": missing out-of-fold prediction";
        return;
      }
    }
    auto c = survstats::c_index(out.oof, records);
    if (!c) {
      out.aborted = true;
      out.diagnostic = "repeat " + std::to_string(r) + ": no comparable pairs";
      return;
    }
    out.cindex = *c;
  });

  CVResult result;
  result.set_name = spec.name();
  result.mean_oof_prediction.assign(n, 0.0);
  std::vector<std::int64_t> selection_totals(roles.hd95.size(), 0);
  int completed = 0;
  for (const auto& out : outcomes) {
    if (out.aborted) {
      ++result.aborted_repeats;
      std::cerr << "run_cv: aborted " << out.diagnostic << "\n";
      continue;
    }
    ++completed;
    result.per_repeat.push_back(out.cindex);
    result.fallback_folds += out.fallback_folds;
    for (std::size_t j = 0; j < selection_totals.size(); ++j)
      selection_totals[j] += out.selection_counts[j];
    for (int i = 0; i < n; ++i) result.mean_oof_prediction[i] += out.oof[i];
  }
  if (completed == 0) fail(ErrorKind::Data, "every cross-validation repeat aborted");

  double mean = 0.0;
  for (double c : result.per_repeat) mean += c;
  mean /= completed;
  double sd = 0.0;
  if (completed > 1) {
    for (double c : result.per_repeat) sd += (c - mean) * (c - mean);
    sd = std::sqrt(sd / (completed - 1));
  }
  double half = 1.96 * sd / std::sqrt(static_cast<double>(completed));
  result.mean_cindex = mean;
  result.ci_low = mean - half;
  result.ci_high = mean + half;

  for (int i = 0; i < n; ++i) result.mean_oof_prediction[i] /= completed;
  if (wants_hd95) {
    double denom = static_cast<double>(completed) * k_folds;
    for (std::size_t j = 0; j < roles.hd95.size(); ++j)
      result.selection_freq[roles.hd95[j]] =
          static_cast<double>(selection_totals[j]) / denom;
  }
  return result;
}

}  // namespace gliomorph::pipeline
