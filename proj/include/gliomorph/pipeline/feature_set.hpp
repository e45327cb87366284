#pragma once

#include <string>
#include <vector>

#include "gliomorph/volio/cohort.hpp"
#include "gliomorph/volio/csv.hpp"

namespace gliomorph::pipeline {

// Named feature groups a model can be built from. Group membership is
// resolved from column names: hd95_* are deformation features, com_x/y/z
// the tumor center of mass, cev the enhancing volume, tcv_* component
// volumes, age the age column, and Clinical covers age plus every column
// not claimed by another group.
enum class FeatureGroup { Hd95, Clinical, CoM, CEV, TCV, Age };

struct FeatureSetSpec {
  std::vector<FeatureGroup> groups;

  bool contains(FeatureGroup g) const {
    for (auto x : groups)
      if (x == g) return true;
    return false;
  }

  // Display / spec-string form, e.g. "hd95+clinical".
  std::string name() const;

  // Parses "hd95+clinical+com"; unknown group names are a validation error.
  static FeatureSetSpec parse(const std::string& text);
};

// Group membership for one table. Built once per merged feature table.
struct ColumnRoles {
  std::vector<std::string> hd95, clinical, com, cev, tcv, age;

  static ColumnRoles infer(const volio::FeatureTable& table);

  // Columns of the spec in table order, with the Hd95 group replaced by
  // `selected_hd95` when given. Raises a validation error if a requested
  // group has no columns.
  std::vector<std::string> resolve(const FeatureSetSpec& spec,
                                   const std::vector<std::string>* selected_hd95 = nullptr) const;
};

// Imaging features joined with the cohort's clinical columns, one row per
// record in record order (joined on subject id). Every record must have an
// imaging row; shared column names are a validation error. An empty imaging
// table (no columns) yields the clinical columns alone.
volio::FeatureTable assemble_features(const volio::FeatureTable& imaging,
                                      const volio::Cohort& cohort);

}  // namespace gliomorph::pipeline
