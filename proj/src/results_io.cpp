#include "gliomorph/pipeline/results_io.hpp"

#include <fstream>

#include <json.hpp>

#include "gliomorph/error.hpp"

namespace gliomorph::pipeline {

namespace {

using nlohmann::ordered_json;

ordered_json load_doc(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, std::string("cannot open ") + what + ": " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string(what) + " " + path + ": " + e.what());
  }
  return doc;
}

void save_doc(const std::string& path, const ordered_json& doc, const char* what) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, std::string("cannot write ") + what + ": " + path);
  out << doc.dump(2) << "\n";
  if (!out) fail(ErrorKind::Io, std::string("failed writing ") + what + ": " + path);
}

// NaN has no JSON representation; nlohmann emits null for it and we read
// null back as a missing value.
double num_or_missing(const ordered_json& v, const char* what) {
  if (v.is_null()) return volio::missing_value();
  if (!v.is_number()) fail(ErrorKind::Parse, std::string(what) + " must be a number or null");
  return v.get<double>();
}

const char* status_name(survstats::CoxStatus s) {
  switch (s) {
    case survstats::CoxStatus::Ok: return "ok";
    case survstats::CoxStatus::NoVariation: return "no_variation";
    case survstats::CoxStatus::NotConverged: return "not_converged";
  }
  return "?";
}

survstats::CoxStatus status_from_name(const std::string& s) {
  if (s == "ok") return survstats::CoxStatus::Ok;
  if (s == "no_variation") return survstats::CoxStatus::NoVariation;
  if (s == "not_converged") return survstats::CoxStatus::NotConverged;
  fail(ErrorKind::Parse, "unknown cox status \"" + s + "\"");
}

ordered_json fit_to_json(const survstats::CoxFit& fit) {
  ordered_json j;
  j["beta"] = fit.beta;
  j["se"] = fit.se;
  j["z"] = fit.z;
  j["p"] = fit.p;
  j["hr"] = fit.hr;
  j["ci_low"] = fit.ci_low;
  j["ci_high"] = fit.ci_high;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["status"] = status_name(fit.status);
  j["loglik"] = fit.loglik;
  return j;
}

survstats::CoxFit fit_from_json(const ordered_json& j) {
  survstats::CoxFit fit;
  fit.beta = num_or_missing(j.at("beta"), "beta");
  fit.se = num_or_missing(j.at("se"), "se");
  fit.z = num_or_missing(j.at("z"), "z");
  fit.p = num_or_missing(j.at("p"), "p");
  fit.hr = num_or_missing(j.at("hr"), "hr");
  fit.ci_low = num_or_missing(j.at("ci_low"), "ci_low");
  fit.ci_high = num_or_missing(j.at("ci_high"), "ci_high");
  fit.converged = j.at("converged").get<bool>();
  fit.iterations = j.at("iterations").get<int>();
  fit.status = status_from_name(j.at("status").get<std::string>());
  fit.loglik = num_or_missing(j.at("loglik"), "loglik");
  return fit;
}

ordered_json curve_to_json(const survstats::SurvivalCurve& curve) {
  ordered_json j;
  j["times"] = curve.times;
  j["probs"] = curve.probs;
  return j;
}

survstats::SurvivalCurve curve_from_json(const ordered_json& j) {
  survstats::SurvivalCurve curve;
  curve.times = j.at("times").get<std::vector<double>>();
  curve.probs = j.at("probs").get<std::vector<double>>();
  curve.validate();
  return curve;
}

}  // namespace

void save_selection_report(const std::string& path, const SelectionReport& report) {
  ordered_json doc;
  doc["alpha"] = report.alpha;
  auto& entries = doc["entries"] = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json j;
    j["feature"] = e.feature;
    j["selected"] = e.selected;
    j["fit"] = fit_to_json(e.fit);
    entries.push_back(std::move(j));
  }
  save_doc(path, doc, "selection report");
}

SelectionReport load_selection_report(const std::string& path) {
  auto doc = load_doc(path, "selection report");
  SelectionReport report;
  try {
    report.alpha = doc.at("alpha").get<double>();
    for (const auto& j : doc.at("entries")) {
      SelectionEntry e;
      e.feature = j.at("feature").get<std::string>();
      e.selected = j.at("selected").get<bool>();
      e.fit = fit_from_json(j.at("fit"));
      report.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "selection report " + path + ": " + e.what());
  }
  return report;
}

void save_cv_report(const std::string& path, const CVReport& report) {
  ordered_json doc;
  doc["seed"] = report.seed;
  doc["repeats"] = report.repeats;
  doc["alpha"] = report.alpha;
  auto& results = doc["results"] = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json j;
    j["set"] = r.set_name;
    j["mean_cindex"] = r.mean_cindex;
    j["ci_low"] = r.ci_low;
    j["ci_high"] = r.ci_high;
    j["per_repeat"] = r.per_repeat;
    j["selection_freq"] = ordered_json::object();
    for (const auto& [name, freq] : r.selection_freq) j["selection_freq"][name] = freq;
    j["aborted_repeats"] = r.aborted_repeats;
    j["fallback_folds"] = r.fallback_folds;
    results.push_back(std::move(j));
  }
  save_doc(path, doc, "cv report");
}

CVReport load_cv_report(const std::string& path) {
  auto doc = load_doc(path, "cv report");
  CVReport report;
  try {
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.repeats = doc.at("repeats").get<int>();
    report.alpha = doc.at("alpha").get<double>();
    for (const auto& j : doc.at("results")) {
      CVResult r;
      r.set_name = j.at("set").get<std::string>();
      r.mean_cindex = j.at("mean_cindex").get<double>();
      r.ci_low = j.at("ci_low").get<double>();
      r.ci_high = j.at("ci_high").get<double>();
      r.per_repeat = j.at("per_repeat").get<std::vector<double>>();
      for (const auto& [name, freq] : j.at("selection_freq").items())
        r.selection_freq[name] = freq.get<double>();
      r.aborted_repeats = j.at("aborted_repeats").get<int>();
      r.fallback_folds = j.at("fallback_folds").get<int>();
      report.results.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "cv report " + path + ": " + e.what());
  }
  return report;
}

void save_stratification_report(const std::string& path, const StratificationReport& report) {
  const auto& r = report.result;
  ordered_json doc;
  doc["threshold"] = r.threshold;
  doc["logrank_chi2"] = r.logrank_chi2;
  doc["logrank_p"] = r.logrank_p;
  doc["hr"] = r.hr;
  doc["hr_ci_low"] = r.hr_ci_low;
  doc["hr_ci_high"] = r.hr_ci_high;
  doc["group_fit"] = fit_to_json(r.group_fit);
  doc["n_high"] = r.n_high;
  doc["n_low"] = r.n_low;
  doc["high_curve"] = curve_to_json(r.high_curve);
  doc["low_curve"] = curve_to_json(r.low_curve);
  doc["high_risk_ids"] = report.high_risk_ids;
  save_doc(path, doc, "stratification report");
}

StratificationReport load_stratification_report(const std::string& path) {
  auto doc = load_doc(path, "stratification report");
  StratificationReport report;
  auto& r = report.result;
  try {
    r.threshold = doc.at("threshold").get<double>();
    r.logrank_chi2 = doc.at("logrank_chi2").get<double>();
    r.logrank_p = doc.at("logrank_p").get<double>();
    r.hr = num_or_missing(doc.at("hr"), "hr");
    r.hr_ci_low = num_or_missing(doc.at("hr_ci_low"), "hr_ci_low");
    r.hr_ci_high = num_or_missing(doc.at("hr_ci_high"), "hr_ci_high");
    r.group_fit = fit_from_json(doc.at("group_fit"));
    r.n_high = doc.at("n_high").get<int>();
    r.n_low = doc.at("n_low").get<int>();
    r.high_curve = curve_from_json(doc.at("high_curve"));
    r.low_curve = curve_from_json(doc.at("low_curve"));
    report.high_risk_ids = doc.at("high_risk_ids").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "stratification report " + path + ": " + e.what());
  }
  return report;
}

void save_decile_report(const std::string& path, const DecileResult& result) {
  ordered_json doc;
  doc["cohort_median"] = result.cohort_median;
  auto& rows = doc["rows"] = ordered_json::array();
  for (const auto& r : result.rows) {
    ordered_json j;
    j["feature"] = r.feature;
    j["cutoff"] = r.cutoff;
    j["n_high"] = r.n_high;
    j["n_rest"] = r.n_rest;
    j["defined"] = r.defined;
    j["pct_short"] = r.pct_short;
    j["logrank_chi2"] = r.logrank_chi2;
    j["logrank_p"] = r.logrank_p;
    j["significant"] = r.significant;
    rows.push_back(std::move(j));
  }
  save_doc(path, doc, "decile report");
}

DecileResult load_decile_report(const std::string& path) {
  auto doc = load_doc(path, "decile report");
  DecileResult result;
  try {
    result.cohort_median = doc.at("cohort_median").get<double>();
    for (const auto& j : doc.at("rows")) {
      DecileRow r;
      r.feature = j.at("feature").get<std::string>();
      r.cutoff = j.at("cutoff").get<double>();
      r.n_high = j.at("n_high").get<int>();
      r.n_rest = j.at("n_rest").get<int>();
      r.defined = j.at("defined").get<bool>();
      r.pct_short = num_or_missing(j.at("pct_short"), "pct_short");
      r.logrank_chi2 = num_or_missing(j.at("logrank_chi2"), "logrank_chi2");
      r.logrank_p = num_or_missing(j.at("logrank_p"), "logrank_p");
      r.significant = j.at("significant").get<bool>();
      result.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "decile report " + path + ": " + e.what());
  }
  return result;
}

}  // namespace gliomorph::pipeline
