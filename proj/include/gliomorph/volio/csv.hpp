#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::volio {

// How to treat "NA" cells in clinical columns of a cohort CSV.
enum class MissingPolicy {
  Error,         // any missing clinical value is a hard error
  ImputeMedian,  // replace with the column median of the non-missing values
  Keep,          // leave as NaN (internal use)
};

struct Cohort {
  std::vector<SurvivalRecord> records;
  FeatureTable clinical;  // one row per record, same order
};

// Cohort CSV: mandatory header `subject_id,time_months,event`; any further
// columns are numeric clinical covariates; "NA" marks missing.
Cohort read_cohort_csv(const std::string& path, MissingPolicy missing = MissingPolicy::Error);
void write_cohort_csv(const std::string& path, const Cohort& cohort);

// Generic numeric table CSV: first column `subject_id`, remaining columns
// numeric, "NA" for missing. Used for feature tables and predictions.
FeatureTable read_table_csv(const std::string& path);
void write_table_csv(const std::string& path, const FeatureTable& table);

// Shortest exact decimal rendering of a double (round-trips bit-exactly).
std::string format_double(double v);
double parse_double(const std::string& s, const std::string& context);

}  // namespace gliomorph::volio
