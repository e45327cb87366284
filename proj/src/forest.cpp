#include "gliomorph/rsf/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "gliomorph/detail/parallel.hpp"
#include "gliomorph/detail/rng.hpp"
#include "gliomorph/error.hpp"
#include "gliomorph/survstats/km.hpp"

namespace gliomorph::rsf {

namespace {

// Grows one tree over its bootstrap sample. Feature values are column-major
// over the in-bag records.
class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& x, const std::vector<double>& time,
              const std::vector<bool>& event, const ForestParams& params, int mtry,
              detail::Rng& rng)
      : x_(x), time_(time), event_(event), params_(params), mtry_(mtry), rng_(rng) {}

  Tree build() {
    std::vector<int> all(time_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    grow(all, 0);
    return std::move(tree_);
  }

 private:
  struct Candidate {
    double chi2 = -1.0;
    int feature = -1;
    double threshold = 0.0;
  };

  int grow(std::vector<int>& records, int depth) {
    int idx = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();

    int events = 0;
    for (int r : records) events += event_[r] ? 1 : 0;
    bool depth_ok = !params_.max_depth || depth < *params_.max_depth;
    bool splittable =
        static_cast<int>(records.size()) >= params_.min_split && events >= 1 && depth_ok;

    Candidate best;
    if (splittable) best = best_split(records);

    if (!splittable || best.feature < 0) {
      make_leaf(idx, records);
      return idx;
    }

    std::vector<int> left, right;
    left.reserve(records.size());
    right.reserve(records.size());
    for (int r : records) {
      if (x_[best.feature][r] <= best.threshold)
        left.push_back(r);
      else
        right.push_back(r);
    }
    tree_.nodes[idx].feature = best.feature;
    tree_.nodes[idx].threshold = best.threshold;
    int l = grow(left, depth + 1);
    int r = grow(right, depth + 1);
    tree_.nodes[idx].left = l;
    tree_.nodes[idx].right = r;
    return idx;
  }

  void make_leaf(int idx, const std::vector<int>& records) {
    std::vector<SurvivalRecord> obs;
    obs.reserve(records.size());
    for (int r : records) obs.push_back({std::string(), time_[r], event_[r]});
    tree_.nodes[idx].feature = -1;
    tree_.nodes[idx].curve = survstats::km_curve(obs);
  }

  // Log-rank machinery over the node's distinct event times. A record with
  // pos p is at risk at event-time index t iff p >= t+1; an event record's
  // own time is te[p-1].
  Candidate best_split(const std::vector<int>& records) {
    std::vector<double> te;
    for (int r : records)
      if (event_[r]) te.push_back(time_[r]);
    std::sort(te.begin(), te.end());
    te.erase(std::unique(te.begin(), te.end()), te.end());
    const int T = static_cast<int>(te.size());
    const int m = static_cast<int>(records.size());

    std::vector<int> pos(m);
    std::vector<std::int64_t> n_at(T, 0), d_at(T, 0);
    {
      std::vector<std::int64_t> total_pos(T + 1, 0);
      for (int k = 0; k < m; ++k) {
        int r = records[k];
        int p = static_cast<int>(std::upper_bound(te.begin(), te.end(), time_[r]) - te.begin());
        pos[k] = p;
        ++total_pos[p];
        if (event_[r]) ++d_at[p - 1];
      }
      std::int64_t suffix = 0;
      for (int t = T - 1; t >= 0; --t) {
        suffix += total_pos[t + 1];
        n_at[t] = suffix;
      }
    }

    Candidate best;
    std::vector<int> feats = rng_.sample_without_replacement(static_cast<int>(x_.size()), mtry_);
    std::vector<std::pair<double, int>> order(m);  // (value, record slot)
    std::vector<std::int64_t> left_pos(T + 1), left_d(T), left_n(T);

    for (int f : feats) {
      const auto& col = x_[f];
      for (int k = 0; k < m; ++k) order[k] = {col[records[k]], k};
      std::sort(order.begin(), order.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (order.front().first == order.back().first) continue;  // constant in node

      std::fill(left_pos.begin(), left_pos.end(), 0);
      std::fill(left_d.begin(), left_d.end(), 0);
      int left_count = 0;
      std::size_t k = 0;
      while (k < order.size()) {
        double v = order[k].first;
        while (k < order.size() && order[k].first == v) {
          int slot = order[k].second;
          ++left_pos[pos[slot]];
          if (event_[records[slot]]) ++left_d[pos[slot] - 1];
          ++left_count;
          ++k;
        }
        if (k == order.size()) break;  // no upper block remains
        int right_count = m - left_count;
        if (left_count < params_.min_leaf) continue;
        if (right_count < params_.min_leaf) break;  // right only shrinks

        double v_next = order[k].first;
        double threshold = 0.5 * (v + v_next);
        // Adjacent representables can round the midpoint onto the upper
        // value; fall back to the lower so `<= threshold` reproduces the
        // scored partition.
        if (threshold == v_next) threshold = v;

        std::int64_t suffix = 0;
        for (int t = T - 1; t >= 0; --t) {
          suffix += left_pos[t + 1];
          left_n[t] = suffix;
        }
        double u = 0.0, var = 0.0;
        for (int t = 0; t < T; ++t) {
          std::int64_t n = n_at[t];
          if (n <= 1) continue;
          std::int64_t d = d_at[t];
          u += static_cast<double>(left_d[t] * n - d * left_n[t]) / static_cast<double>(n);
          var += static_cast<double>(d) * static_cast<double>(left_n[t] * (n - left_n[t])) *
                 static_cast<double>(n - d) /
                 (static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n - 1));
        }
        double chi2 = var > 0.0 ? u * u / var : 0.0;
        if (chi2 > best.chi2) best = {chi2, f, threshold};
      }
    }
    return best;
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<double>& time_;
  const std::vector<bool>& event_;
  const ForestParams& params_;
  int mtry_;
  detail::Rng& rng_;
  Tree tree_;
};

void validate_params(const ForestParams& params, int n, int p) {
  if (params.n_trees < 1) fail(ErrorKind::Validation, "n_trees must be >= 1");
  if (params.min_split < 2) fail(ErrorKind::Validation, "min_split must be >= 2");
  if (params.min_leaf < 1) fail(ErrorKind::Validation, "min_leaf must be >= 1");
  if (params.min_leaf > n) fail(ErrorKind::Validation, "min_leaf exceeds cohort size");
  if (params.max_depth && *params.max_depth < 0)
    fail(ErrorKind::Validation, "max_depth must be >= 0");
  if (params.mtry && (*params.mtry < 1 || *params.mtry > p))
    fail(ErrorKind::Validation, "mtry must be in [1, #features]");
  if (n < params.min_split)
    fail(ErrorKind::Validation, "need at least min_split subjects to fit");
}

}  // namespace

ForestModel fit(const volio::FeatureTable& features, std::span<const SurvivalRecord> records,
                const ForestParams& params) {
  const int n = static_cast<int>(records.size());
  const int p = static_cast<int>(features.n_cols());
  if (static_cast<std::size_t>(n) != features.n_rows())
    fail(ErrorKind::Validation, "feature rows and records differ in length");
  if (p < 1) fail(ErrorKind::Validation, "need at least one feature column");
  validate_params(params, n, p);

  bool any_event = false;
  for (const auto& r : records) {
    if (!(r.time_months > 0.0)) fail(ErrorKind::Validation, "survival times must be positive");
    any_event |= r.event;
  }
  if (!any_event) fail(ErrorKind::Validation, "need at least one event to fit");

  // column-major copy; also rejects missing values
  std::vector<std::vector<double>> x_full(p, std::vector<double>(n));
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < n; ++i) {
      double v = features.value(i, j);
      if (volio::is_missing(v))
        fail(ErrorKind::Validation,
             "missing value in feature " + features.columns()[j] + " for subject " +
                 features.subject_ids()[i]);
      x_full[j][i] = v;
    }
  }

  int mtry = params.mtry ? *params.mtry
                         : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p))));

  ForestModel model;
  model.params = params;
  model.feature_names = features.columns();
  model.trees.resize(params.n_trees);

  std::vector<double> tree_t_max(params.n_trees, 0.0);
  detail::parallel_for(static_cast<std::size_t>(params.n_trees), [&](std::size_t t) {
    detail::Rng rng(detail::derive_seed(params.seed, t));
    std::vector<std::vector<double>> xb(p, std::vector<double>(n));
    std::vector<double> time(n);
    std::vector<bool> event(n);
    double t_max = 0.0;
    for (int i = 0; i < n; ++i) {
      int pick = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
      for (int j = 0; j < p; ++j) xb[j][i] = x_full[j][pick];
      time[i] = records[pick].time_months;
      event[i] = records[pick].event;
      if (event[i] && time[i] > t_max) t_max = time[i];
    }
    TreeBuilder builder(xb, time, event, params, mtry, rng);
    model.trees[t] = builder.build();
    tree_t_max[t] = t_max;
  });

  model.training_t_max = 0.0;
  for (double t : tree_t_max) model.training_t_max = std::max(model.training_t_max, t);
  if (model.training_t_max == 0.0) {
    // every bootstrap missed every event; fall back to the training data
    for (const auto& r : records)
      if (r.event) model.training_t_max = std::max(model.training_t_max, r.time_months);
  }
  return model;
}

SurvivalCurve predict_curve(const ForestModel& model, std::span<const double> row) {
  if (row.size() != model.feature_names.size())
    fail(ErrorKind::Validation, "prediction row width does not match the model");
  for (double v : row)
    if (volio::is_missing(v)) fail(ErrorKind::Validation, "missing feature value in prediction row");
  if (model.trees.empty()) fail(ErrorKind::Validation, "empty model");

  std::vector<const SurvivalCurve*> leaves;
  leaves.reserve(model.trees.size());
  for (const auto& tree : model.trees) {
    int node = 0;
    while (tree.nodes[node].feature >= 0) {
      const auto& nd = tree.nodes[node];
      node = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    leaves.push_back(&tree.nodes[node].curve);
  }

  SurvivalCurve out;
  for (const auto* c : leaves) out.times.insert(out.times.end(), c->times.begin(), c->times.end());
  std::sort(out.times.begin(), out.times.end());
  out.times.erase(std::unique(out.times.begin(), out.times.end()), out.times.end());

  out.probs.assign(out.times.size(), 0.0);
  for (const auto* c : leaves) {
    std::size_t j = 0;
    double s = 1.0;
    for (std::size_t k = 0; k < out.times.size(); ++k) {
      while (j < c->times.size() && c->times[j] <= out.times[k]) {
        s = c->probs[j];
        ++j;
      }
      out.probs[k] += s;
    }
  }
  double inv = 1.0 / static_cast<double>(leaves.size());
  for (double& pr : out.probs) pr *= inv;
  return out;
}

double predict_expected(const ForestModel& model, std::span<const double> row) {
  return survstats::rmst(predict_curve(model, row), model.training_t_max);
}

namespace {

nlohmann::json curve_to_json(const SurvivalCurve& c) {
  return nlohmann::json{{"times", c.times}, {"probs", c.probs}};
}

SurvivalCurve curve_from_json(const nlohmann::json& j) {
  SurvivalCurve c;
  c.times = j.at("times").get<std::vector<double>>();
  c.probs = j.at("probs").get<std::vector<double>>();
  c.validate();
  return c;
}

}  // namespace

std::string to_canonical_json(const ForestModel& model) {
  nlohmann::json doc;
  nlohmann::json params;
  params["n_trees"] = model.params.n_trees;
  params["min_split"] = model.params.min_split;
  params["min_leaf"] = model.params.min_leaf;
  params["seed"] = model.params.seed;
  if (model.params.max_depth)
    params["max_depth"] = *model.params.max_depth;
  else
    params["max_depth"] = nullptr;
  if (model.params.mtry)
    params["mtry"] = *model.params.mtry;
  else
    params["mtry"] = nullptr;
  doc["params"] = params;
  doc["feature_names"] = model.feature_names;
  doc["training_t_max"] = model.training_t_max;
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : model.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : tree.nodes) {
      if (nd.feature < 0) {
        nodes.push_back(nlohmann::json{{"curve", curve_to_json(nd.curve)}});
      } else {
        nodes.push_back(nlohmann::json{{"feature", nd.feature},
                                       {"threshold", nd.threshold},
                                       {"left", nd.left},
                                       {"right", nd.right}});
      }
    }
    trees.push_back(nlohmann::json{{"nodes", std::move(nodes)}});
  }
  doc["trees"] = std::move(trees);
  return doc.dump();
}

ForestModel forest_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("model JSON: ") + e.what());
  }
  ForestModel model;
  try {
    const auto& params = doc.at("params");
    model.params.n_trees = params.at("n_trees").get<int>();
    model.params.min_split = params.at("min_split").get<int>();
    model.params.min_leaf = params.at("min_leaf").get<int>();
    model.params.seed = params.at("seed").get<std::uint64_t>();
    if (!params.at("max_depth").is_null()) model.params.max_depth = params.at("max_depth").get<int>();
    if (!params.at("mtry").is_null()) model.params.mtry = params.at("mtry").get<int>();
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    model.training_t_max = doc.at("training_t_max").get<double>();
    for (const auto& jt : doc.at("trees")) {
      Tree tree;
      for (const auto& jn : jt.at("nodes")) {
        TreeNode nd;
        if (jn.contains("curve")) {
          nd.curve = curve_from_json(jn.at("curve"));
        } else {
          nd.feature = jn.at("feature").get<int>();
          nd.threshold = jn.at("threshold").get<double>();
          nd.left = jn.at("left").get<int>();
          nd.right = jn.at("right").get<int>();
        }
        tree.nodes.push_back(std::move(nd));
      }
      model.trees.push_back(std::move(tree));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("model JSON: ") + e.what());
  }
  return model;
}

void save_forest(const std::string& path, const ForestModel& model) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write model: " + path);
  out << to_canonical_json(model) << "\n";
  if (!out) fail(ErrorKind::Io, "failed writing model: " + path);
}

ForestModel load_forest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open model: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return forest_from_json(text);
}

}  // namespace gliomorph::rsf
