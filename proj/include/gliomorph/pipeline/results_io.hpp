#pragma once

#include <string>
#include <vector>

#include "gliomorph/pipeline/cv.hpp"
#include "gliomorph/pipeline/decile.hpp"
#include "gliomorph/pipeline/select.hpp"
#include "gliomorph/pipeline/stratify.hpp"

namespace gliomorph::pipeline {

// JSON persistence for analysis results, so `report` can render artifacts
// from earlier command runs. Writers are deterministic for fixed inputs;
// missing values serialize as null. Subject ids accompany the
// stratification groups but out-of-fold predictions travel separately as a
// prediction table CSV.

struct SelectionReport {
  double alpha = 0.05;
  std::vector<SelectionEntry> entries;
};

struct CVReport {
  std::uint64_t seed = 0;
  int repeats = 0;
  double alpha = 0.05;
  std::vector<CVResult> results;  // one per feature-set spec
};

struct StratificationReport {
  std::vector<std::string> high_risk_ids;
  StratificationResult result;
};

void save_selection_report(const std::string& path, const SelectionReport& report);
SelectionReport load_selection_report(const std::string& path);

void save_cv_report(const std::string& path, const CVReport& report);
CVReport load_cv_report(const std::string& path);

void save_stratification_report(const std::string& path, const StratificationReport& report);
StratificationReport load_stratification_report(const std::string& path);

void save_decile_report(const std::string& path, const DecileResult& result);
DecileResult load_decile_report(const std::string& path);

}  // namespace gliomorph::pipeline
