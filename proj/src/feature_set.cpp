#include "gliomorph/pipeline/feature_set.hpp"

#include <algorithm>

#include "gliomorph/error.hpp"

namespace gliomorph::pipeline {

namespace {

const char* group_name(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::Hd95: return "hd95";
    case FeatureGroup::Clinical: return "clinical";
    case FeatureGroup::CoM: return "com";
    case FeatureGroup::CEV: return "cev";
    case FeatureGroup::TCV: return "tcv";
    case FeatureGroup::Age: return "age";
  }
  return "?";
}

}  // namespace

std::string FeatureSetSpec::name() const {
  std::string out;
  for (auto g : groups) {
    if (!out.empty()) out += "+";
    out += group_name(g);
  }
  return out;
}

FeatureSetSpec FeatureSetSpec::parse(const std::string& text) {
  FeatureSetSpec spec;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) fail(ErrorKind::Validation, "empty feature group in \"" + text + "\"");
    FeatureGroup g;
    if (token == "hd95")
      g = FeatureGroup::Hd95;
    else if (token == "clinical")
      g = FeatureGroup::Clinical;
    else if (token == "com")
      g = FeatureGroup::CoM;
    else if (token == "cev")
      g = FeatureGroup::CEV;
    else if (token == "tcv")
      g = FeatureGroup::TCV;
    else if (token == "age")
      g = FeatureGroup::Age;
    else
      fail(ErrorKind::Validation, "unknown feature group \"" + token + "\"");
    if (!spec.contains(g)) spec.groups.push_back(g);
    token.clear();
  };
  for (char c : text) {
    if (c == '+')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return spec;
}

ColumnRoles ColumnRoles::infer(const volio::FeatureTable& table) {
  ColumnRoles roles;
  for (const auto& c : table.columns()) {
    if (c.rfind("hd95_", 0) == 0) {
      roles.hd95.push_back(c);
    } else if (c == "com_x" || c == "com_y" || c == "com_z") {
      roles.com.push_back(c);
    } else if (c == "cev") {
      roles.cev.push_back(c);
    } else if (c.rfind("tcv_", 0) == 0) {
      roles.tcv.push_back(c);
    } else if (c == "age") {
      roles.age.push_back(c);
      roles.clinical.push_back(c);
    } else {
      roles.clinical.push_back(c);
    }
  }
  return roles;
}

std::vector<std::string> ColumnRoles::resolve(
    const FeatureSetSpec& spec, const std::vector<std::string>* selected_hd95) const {
  if (spec.groups.empty()) fail(ErrorKind::Validation, "feature set has no groups");
  std::vector<std::string> out;
  auto add = [&out](const std::vector<std::string>& cols) {
    for (const auto& c : cols)
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (auto g : spec.groups) {
    const std::vector<std::string>* cols = nullptr;
    switch (g) {
      case FeatureGroup::Hd95: cols = selected_hd95 ? selected_hd95 : &hd95; break;
      case FeatureGroup::Clinical: cols = &clinical; break;
      case FeatureGroup::CoM: cols = &com; break;
      case FeatureGroup::CEV: cols = &cev; break;
      case FeatureGroup::TCV: cols = &tcv; break;
      case FeatureGroup::Age: cols = &age; break;
    }
    // A selected-Hd95 list may legitimately be empty (nothing passed
    // selection); every group must otherwise have columns in the table.
    bool group_present = g == FeatureGroup::Hd95 ? !hd95.empty() : !cols->empty();
    if (!group_present)
      fail(ErrorKind::Validation,
           std::string("feature group \"") + group_name(g) + "\" has no columns in the table");
    add(*cols);
  }
  return out;
}

volio::FeatureTable assemble_features(const volio::FeatureTable& imaging,
                                      const volio::Cohort& cohort) {
  std::vector<std::string> columns = imaging.columns();
  for (const auto& c : cohort.clinical.columns()) {
    if (std::find(columns.begin(), columns.end(), c) != columns.end())
      fail(ErrorKind::Validation, "column \"" + c + "\" appears in both tables");
    columns.push_back(c);
  }

  volio::FeatureTable out{columns};
  bool any_imaging = !imaging.columns().empty();
  for (std::size_t i = 0; i < cohort.records.size(); ++i) {
    const std::string& id = cohort.records[i].subject_id;
    std::vector<double> row;
    row.reserve(columns.size());
    if (any_imaging) {
      int r = imaging.row_index(id);
      if (r < 0) fail(ErrorKind::Validation, "no imaging features for subject " + id);
      for (std::size_t j = 0; j < imaging.n_cols(); ++j) row.push_back(imaging.value(r, j));
    }
    if (cohort.clinical.subject_ids()[i] != id)
      fail(ErrorKind::Validation, "cohort records and clinical rows out of order");
    for (std::size_t j = 0; j < cohort.clinical.n_cols(); ++j)
      row.push_back(cohort.clinical.value(i, j));
    out.add_row(id, std::move(row));
  }
  return out;
}

}  // namespace gliomorph::pipeline
