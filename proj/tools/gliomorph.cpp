// Command-line front end: extract, select, cv, stratify, decile, synth,
// report. Exit codes: 0 success, 2 bad input (validation, format, parse,
// data), 1 internal failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gliomorph/error.hpp"
#include "gliomorph/morpho/features.hpp"
#include "gliomorph/pipeline/config.hpp"
#include "gliomorph/pipeline/cv.hpp"
#include "gliomorph/pipeline/decile.hpp"
#include "gliomorph/pipeline/feature_set.hpp"
#include "gliomorph/pipeline/report.hpp"
#include "gliomorph/pipeline/results_io.hpp"
#include "gliomorph/pipeline/select.hpp"
#include "gliomorph/pipeline/stratify.hpp"
#include "gliomorph/pipeline/synth.hpp"
#include "gliomorph/volio/csv.hpp"
#include "gliomorph/volio/nifti.hpp"
#include "gliomorph/volio/structure_map.hpp"

namespace {

using namespace gliomorph;

struct ExtractArgs {
  std::string config, atlas, map, out;
  std::vector<std::string> subjects;  // id=path
};

void run_extract(const ExtractArgs& args) {
  pipeline::PipelineConfig cfg;
  if (!args.config.empty()) cfg = pipeline::read_pipeline_config(args.config);
  std::string atlas_path = args.atlas.empty() ? cfg.atlas : args.atlas;
  if (atlas_path.empty()) fail(ErrorKind::Validation, "no atlas volume given (--atlas or config)");
  std::string map_path = args.map.empty() ? cfg.structure_map : args.map;

  std::vector<pipeline::SubjectVolume> subjects;
  for (const auto& s : args.subjects) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      fail(ErrorKind::Validation, "--subject expects id=path, got \"" + s + "\"");
    subjects.push_back({s.substr(0, eq), s.substr(eq + 1)});
  }
  if (subjects.empty()) subjects = cfg.subjects;
  if (subjects.empty()) fail(ErrorKind::Validation, "no subjects given (--subject or config)");

  auto map = map_path.empty() ? volio::StructureMap::default_map()
                              : volio::read_structure_map(map_path);
  auto atlas = volio::read_nifti(atlas_path);

  volio::FeatureTable table{morpho::feature_column_names(map)};
  for (const auto& s : subjects) {
    auto volume = volio::read_nifti(s.path);
    auto row = morpho::extract_feature_row(volume, atlas, map);
    table.add_row(s.id, morpho::flatten_feature_row(row));
  }
  volio::write_table_csv(args.out, table);
}

struct SelectArgs {
  std::string features, cohort, out;
  double alpha = 0.05;
};

void run_select(const SelectArgs& args) {
  auto cohort = volio::read_cohort_csv(args.cohort);
  auto imaging = volio::read_table_csv(args.features);
  auto merged = pipeline::assemble_features(imaging, cohort);
  auto roles = pipeline::ColumnRoles::infer(merged);
  if (roles.hd95.empty())
    fail(ErrorKind::Validation, "feature table has no hd95_* columns to screen");
  pipeline::SelectionReport report;
  report.alpha = args.alpha;
  report.entries = pipeline::screen_features(merged.select_columns(roles.hd95), cohort.records,
                                             args.alpha);
  pipeline::save_selection_report(args.out, report);
}

struct CvArgs {
  std::string config, features, cohort, out, predictions_out;
  std::vector<std::string> sets;
  int repeats = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  int trees = 0, min_split = 0, min_leaf = 0, mtry = -1, max_depth = -1;
  bool oracle_inject = false;
  const CLI::App* cmd = nullptr;
};

void run_cv_cmd(const CvArgs& args) {
  pipeline::PipelineConfig cfg;
  if (!args.config.empty()) cfg = pipeline::read_pipeline_config(args.config);
  auto given = [&](const char* flag) { return args.cmd->count(flag) > 0; };

  std::string cohort_path = args.cohort.empty() ? cfg.cohort_csv : args.cohort;
  if (cohort_path.empty()) fail(ErrorKind::Validation, "no cohort CSV given (--cohort or config)");
  std::string features_path = args.features.empty() ? cfg.features_csv : args.features;
  std::vector<std::string> sets = args.sets.empty() ? cfg.feature_sets : args.sets;
  if (sets.empty()) fail(ErrorKind::Validation, "no feature sets given (--set or config)");

  auto cohort = volio::read_cohort_csv(cohort_path);
  volio::FeatureTable imaging;
  if (!features_path.empty()) imaging = volio::read_table_csv(features_path);
  auto merged = pipeline::assemble_features(imaging, cohort);

  pipeline::CVOptions options;
  options.repeats = given("--repeats") ? args.repeats : cfg.repeats;
  options.seed = given("--seed") ? args.seed : cfg.seed;
  options.alpha = given("--alpha") ? args.alpha : cfg.alpha;
  options.forest = cfg.forest;
  if (given("--trees")) options.forest.n_trees = args.trees;
  if (given("--min-split")) options.forest.min_split = args.min_split;
  if (given("--min-leaf")) options.forest.min_leaf = args.min_leaf;
  if (given("--mtry")) options.forest.mtry = args.mtry;
  if (given("--max-depth")) {
    if (args.max_depth == 0)
      options.forest.max_depth.reset();
    else
      options.forest.max_depth = args.max_depth;
  }
  options.oracle_inject = args.oracle_inject;

  if (!args.predictions_out.empty() && sets.size() != 1)
    fail(ErrorKind::Validation, "--predictions-out requires exactly one --set");

  pipeline::CVReport report;
  report.seed = options.seed;
  report.repeats = options.repeats;
  report.alpha = options.alpha;
  for (const auto& set : sets) {
    auto spec = pipeline::FeatureSetSpec::parse(set);
    report.results.push_back(pipeline::run_cv(merged, cohort.records, spec, options));
  }
  pipeline::save_cv_report(args.out, report);

  if (!args.predictions_out.empty()) {
    volio::FeatureTable predictions{std::vector<std::string>{"prediction"}};
    const auto& mean_oof = report.results[0].mean_oof_prediction;
    for (std::size_t i = 0; i < cohort.records.size(); ++i)
      predictions.add_row(cohort.records[i].subject_id, {mean_oof[i]});
    volio::write_table_csv(args.predictions_out, predictions);
  }
}

struct StratifyArgs {
  std::string predictions, column = "prediction", cohort, out;
  double min_frac = 0.10;
};

void run_stratify(const StratifyArgs& args) {
  auto cohort = volio::read_cohort_csv(args.cohort);
  auto table = volio::read_table_csv(args.predictions);
  int col = table.column_index(args.column);
  if (col < 0)
    fail(ErrorKind::Validation, "prediction table has no column \"" + args.column + "\"");

  std::vector<double> predictions(cohort.records.size());
  for (std::size_t i = 0; i < cohort.records.size(); ++i) {
    int row = table.row_index(cohort.records[i].subject_id);
    if (row < 0)
      fail(ErrorKind::Validation,
           "no prediction for subject " + cohort.records[i].subject_id);
    predictions[i] = table.value(row, col);
  }

  auto result = pipeline::stratify(predictions, cohort.records, args.min_frac);
  if (!result)
    fail(ErrorKind::Data, "no threshold satisfies the minimum group size on both sides");

  pipeline::StratificationReport report;
  report.result = *result;
  for (std::size_t i = 0; i < cohort.records.size(); ++i)
    if (result->high_risk[i]) report.high_risk_ids.push_back(cohort.records[i].subject_id);
  pipeline::save_stratification_report(args.out, report);
}

struct DecileArgs {
  std::string features, cohort, out;
  std::vector<std::string> columns;
  double alpha = 0.05;
  bool censored_in_denominator = false;
};

void run_decile(const DecileArgs& args) {
  auto cohort = volio::read_cohort_csv(args.cohort);
  auto imaging = volio::read_table_csv(args.features);
  auto merged = pipeline::assemble_features(imaging, cohort);

  std::vector<std::string> columns = args.columns;
  if (columns.empty()) {
    columns = pipeline::ColumnRoles::infer(merged).hd95;
    if (columns.empty())
      fail(ErrorKind::Validation, "feature table has no hd95_* columns (use --columns)");
  }

  pipeline::DecileOptions options;
  options.alpha = args.alpha;
  options.censored_below_median_in_denominator = args.censored_in_denominator;
  auto result =
      pipeline::top_decile_analysis(merged.select_columns(columns), cohort.records, options);
  pipeline::save_decile_report(args.out, result);
}

struct SynthArgs {
  pipeline::SynthParams params;
  std::string features_out, cohort_out;
};

void run_synth(const SynthArgs& args) {
  auto cohort = pipeline::synth_cohort(args.params);
  volio::write_table_csv(args.features_out, cohort.features);
  volio::Cohort out;
  out.records = cohort.records;
  for (const auto& r : cohort.records) out.clinical.add_row(r.subject_id, {});
  volio::write_cohort_csv(args.cohort_out, out);
}

struct ReportArgs {
  std::string selection, cv, stratification, decile, out_dir;
};

void run_report(const ReportArgs& args) {
  if (args.selection.empty() && args.cv.empty() && args.stratification.empty() &&
      args.decile.empty())
    fail(ErrorKind::Validation, "report needs at least one input result");
  std::filesystem::create_directories(args.out_dir);
  auto in_dir = [&](const char* name) {
    return (std::filesystem::path(args.out_dir) / name).string();
  };

  if (!args.selection.empty()) {
    auto report = pipeline::load_selection_report(args.selection);
    pipeline::write_selection_table_csv(in_dir("selected_features.csv"), report);
  }
  if (!args.cv.empty()) {
    auto report = pipeline::load_cv_report(args.cv);
    pipeline::write_cindex_table_csv(in_dir("cindex_table.csv"), report);
    for (const auto& r : report.results) {
      if (r.selection_freq.empty()) continue;
      pipeline::NamedValues freqs(r.selection_freq.begin(), r.selection_freq.end());
      pipeline::write_selection_freq_csv(in_dir("selection_frequency.csv"), freqs);
      pipeline::write_selection_freq_svg(in_dir("selection_frequency.svg"), freqs);
      break;
    }
  }
  if (!args.stratification.empty()) {
    auto report = pipeline::load_stratification_report(args.stratification);
    pipeline::NamedCurves curves{{"high_risk", report.result.high_curve},
                                 {"low_risk", report.result.low_curve}};
    pipeline::write_km_curves_csv(in_dir("km_curves.csv"), curves);
    pipeline::write_km_curves_svg(in_dir("km_curves.svg"), curves);
  }
  if (!args.decile.empty()) {
    auto result = pipeline::load_decile_report(args.decile);
    pipeline::write_decile_table_csv(in_dir("decile_table.csv"), result);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformation-based survival analysis pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gliomorph 0.1.0");

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "segmentation volumes to a feature CSV");
  extract->add_option("--config", ex.config, "pipeline config JSON");
  extract->add_option("--atlas", ex.atlas, "atlas label volume (NIfTI-1)");
  extract->add_option("--map", ex.map, "structure map JSON (default: built-in)");
  extract->add_option("--subject", ex.subjects, "subject volume as id=path (repeatable)");
  extract->add_option("--out", ex.out, "output feature CSV")->required();
  extract->callback([&ex] { run_extract(ex); });

  SelectArgs se;
  auto* select = app.add_subcommand("select", "whole-cohort univariate screening");
  select->add_option("--features", se.features, "feature CSV")->required();
  select->add_option("--cohort", se.cohort, "cohort CSV")->required();
  select->add_option("--alpha", se.alpha, "significance threshold")->capture_default_str();
  select->add_option("--out", se.out, "output selection JSON")->required();
  select->callback([&se] { run_select(se); });

  CvArgs cv;
  auto* cv_cmd = app.add_subcommand("cv", "repeated cross-validated model comparison");
  cv.cmd = cv_cmd;
  cv_cmd->add_option("--config", cv.config, "pipeline config JSON");
  cv_cmd->add_option("--features", cv.features, "feature CSV");
  cv_cmd->add_option("--cohort", cv.cohort, "cohort CSV");
  cv_cmd->add_option("--set", cv.sets, "feature set spec, e.g. hd95+clinical (repeatable)");
  cv_cmd->add_option("--repeats", cv.repeats, "cross-validation repeats");
  cv_cmd->add_option("--seed", cv.seed, "master seed");
  cv_cmd->add_option("--alpha", cv.alpha, "selection significance threshold");
  cv_cmd->add_option("--trees", cv.trees, "trees per forest");
  cv_cmd->add_option("--min-split", cv.min_split, "min records to split a node");
  cv_cmd->add_option("--min-leaf", cv.min_leaf, "min records per child");
  cv_cmd->add_option("--mtry", cv.mtry, "features tried per node");
  cv_cmd->add_option("--max-depth", cv.max_depth, "tree depth cap (0 = unlimited)");
  cv_cmd->add_flag("--oracle-inject", cv.oracle_inject,
                   "score observed times instead of predictions (harness sanity)");
  cv_cmd->add_option("--out", cv.out, "output result JSON")->required();
  cv_cmd->add_option("--predictions-out", cv.predictions_out,
                     "mean out-of-fold prediction CSV (single --set only)");
  cv_cmd->callback([&cv] { run_cv_cmd(cv); });

  StratifyArgs st;
  auto* stratify = app.add_subcommand("stratify", "risk-group threshold search");
  stratify->add_option("--predictions", st.predictions, "prediction CSV")->required();
  stratify->add_option("--column", st.column, "prediction column name")->capture_default_str();
  stratify->add_option("--cohort", st.cohort, "cohort CSV")->required();
  stratify->add_option("--min-frac", st.min_frac, "minimum group fraction")->capture_default_str();
  stratify->add_option("--out", st.out, "output stratification JSON")->required();
  stratify->callback([&st] { run_stratify(st); });

  DecileArgs de;
  auto* decile = app.add_subcommand("decile", "top-decile survival analysis");
  decile->add_option("--features", de.features, "feature CSV")->required();
  decile->add_option("--cohort", de.cohort, "cohort CSV")->required();
  decile->add_option("--columns", de.columns, "columns to analyze (default: hd95_*)")
      ->delimiter(',');
  decile->add_option("--alpha", de.alpha, "significance flag threshold")->capture_default_str();
  decile->add_flag("--censored-in-denominator", de.censored_in_denominator,
                   "count censored-below-median subjects in the denominator");
  decile->add_option("--out", de.out, "output decile JSON")->required();
  decile->callback([&de] { run_decile(de); });

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "synthetic proportional-hazards cohort");
  synth->add_option("--n", sy.params.n, "number of subjects")->capture_default_str();
  synth->add_option("--betas", sy.params.betas, "per-feature log-hazard weights")
      ->delimiter(',');
  synth->add_option("--rate", sy.params.baseline_rate, "baseline event rate per month")->capture_default_str();
  synth->add_option("--horizon", sy.params.censor_horizon,
                    "censoring horizon in months (inf = none)")
      ->capture_default_str();
  synth->add_option("--seed", sy.params.seed, "generator seed")->capture_default_str();
  synth->add_option("--feature-prefix", sy.params.feature_prefix, "feature column prefix")
      ->capture_default_str();
  synth->add_option("--id-prefix", sy.params.id_prefix, "subject id prefix")->capture_default_str();
  synth->add_option("--features-out", sy.features_out, "output feature CSV")->required();
  synth->add_option("--cohort-out", sy.cohort_out, "output cohort CSV")->required();
  synth->callback([&sy] { run_synth(sy); });

  ReportArgs re;
  auto* report = app.add_subcommand("report", "render tables and plots from result files");
  report->add_option("--selection", re.selection, "selection JSON");
  report->add_option("--cv", re.cv, "cv JSON");
  report->add_option("--stratification", re.stratification, "stratification JSON");
  report->add_option("--decile", re.decile, "decile JSON");
  report->add_option("--out-dir", re.out_dir, "artifact output directory")->required();
  report->callback([&re] { run_report(re); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "gliomorph: " << e.what() << "\n";
    return e.kind() == ErrorKind::Internal ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "gliomorph: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
