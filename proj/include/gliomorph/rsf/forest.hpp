#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gliomorph/survstats/survival_curve.hpp"
#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::rsf {

using survstats::SurvivalCurve;
using volio::SurvivalRecord;

struct ForestParams {
  int n_trees = 100;
  std::optional<int> max_depth;  // unlimited when empty
  int min_split = 6;             // records needed to attempt a split
  int min_leaf = 3;              // records required on each side of a split
  std::optional<int> mtry;       // features tried per node; default ceil(sqrt(p))
  std::uint64_t seed = 0;
};

// Binary tree in one array, root at index 0. Internal nodes route
// value <= threshold to `left`; leaves (feature == -1) carry the node's
// product-limit curve over its in-bag records.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  SurvivalCurve curve;
};

struct Tree {
  std::vector<TreeNode> nodes;
};

struct ForestModel {
  ForestParams params;
  std::vector<std::string> feature_names;
  double training_t_max = 0.0;  // largest in-bag event time across the forest
  std::vector<Tree> trees;
};

// Grows params.n_trees trees, each on its own bootstrap of the cohort
// (N draws with replacement, RNG seeded from (seed, tree index), so the
// model is identical no matter how trees are scheduled). Node splitting:
// sample mtry features without replacement; candidate thresholds are
// midpoints between consecutive distinct values among the node's records;
// candidates leaving fewer than min_leaf records on a side are discarded;
// the two-group log-rank chi-squared between the children picks the winner,
// first seen wins ties. Nodes below min_split records, without events, or at
// max_depth become leaves.
ForestModel fit(const volio::FeatureTable& features, std::span<const SurvivalRecord> records,
                const ForestParams& params);

// Mean of the leaf curves the row reaches, one per tree, evaluated
// pointwise on the union of their time grids. `row` is ordered like
// model.feature_names; missing values are a validation error.
SurvivalCurve predict_curve(const ForestModel& model, std::span<const double> row);

// Area under predict_curve up to training_t_max (restricted mean survival).
double predict_expected(const ForestModel& model, std::span<const double> row);

// Canonical JSON: fixed key order, shortest exact number rendering. Two
// fits with identical data and params serialize byte-identically.
std::string to_canonical_json(const ForestModel& model);
ForestModel forest_from_json(const std::string& text);

void save_forest(const std::string& path, const ForestModel& model);
ForestModel load_forest(const std::string& path);

}  // namespace gliomorph::rsf
