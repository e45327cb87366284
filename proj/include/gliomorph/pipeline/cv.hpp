#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gliomorph/pipeline/feature_set.hpp"
#include "gliomorph/rsf/forest.hpp"

namespace gliomorph::pipeline {

// Emitted once per (repeat, fold) with exactly the subject ids handed to
// feature selection and model fitting; lets callers audit that no test
// subject leaks into its own fold's training.
struct FoldLog {
  int repeat = 0;
  int fold = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::vector<std::string> selected;  // Hd95 features chosen on the training folds
  bool used_fallback = false;         // empty selection, fell back to all Hd95 columns
};

struct CVOptions {
  int repeats = 100;
  std::uint64_t seed = 0;
  double alpha = 0.05;  // per-fold feature selection threshold
  rsf::ForestParams forest;
  // Replaces model predictions on held-out subjects with their observed
  // times; harness sanity only.
  bool oracle_inject = false;
  std::function<void(const FoldLog&)> observer;
};

struct CVResult {
  std::string set_name;
  double mean_cindex = 0.0;
  double ci_low = 0.0;   // mean - 1.96 sd/sqrt(repeats)
  double ci_high = 0.0;  // mean + 1.96 sd/sqrt(repeats)
  std::vector<double> per_repeat;
  // Fraction of (repeat, fold) fits each Hd95 feature was selected in.
  std::map<std::string, double> selection_freq;
  int aborted_repeats = 0;
  int fallback_folds = 0;
  // Mean out-of-fold prediction per subject (record order), averaged over
  // completed repeats; feeds risk stratification.
  std::vector<double> mean_oof_prediction;
};

// Repeated K-fold cross-validation, K = ceil(N/5): each repeat reshuffles
// the subjects with its own derived seed, splits them into folds of five
// (last possibly smaller), performs Hd95 selection (when the spec includes
// Hd95) and forest fitting on the training folds only, predicts expected
// survival for the held-out fold, and scores the pooled out-of-fold
// predictions with the concordance index. A repeat whose fold has an
// event-free training set is aborted with a diagnostic. If the spec is
// Hd95-only and selection comes back empty, that fold falls back to all
// Hd95 columns and is counted in fallback_folds.
CVResult run_cv(const volio::FeatureTable& features, std::span<const volio::SurvivalRecord> records,
                const FeatureSetSpec& spec, const CVOptions& options);

}  // namespace gliomorph::pipeline
