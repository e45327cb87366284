#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gliomorph/error.hpp"

namespace gliomorph::volio {

// One subject's follow-up: months observed and whether the endpoint event
// occurred (event=false means censored at `time_months`).
struct SurvivalRecord {
  std::string subject_id;
  double time_months = 0.0;
  bool event = false;
};

inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return std::isnan(v); }

// Rectangular numeric table keyed by subject id. Missing cells are NaN and
// serialize as "NA".
class FeatureTable {
 public:
  FeatureTable() = default;
  explicit FeatureTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (!col_index_.emplace(columns_[j], j).second)
        fail(ErrorKind::Validation, "duplicate column name: " + columns_[j]);
    }
  }

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::string>& subject_ids() const noexcept { return subject_ids_; }
  std::size_t n_rows() const noexcept { return subject_ids_.size(); }
  std::size_t n_cols() const noexcept { return columns_.size(); }

  void add_row(const std::string& subject_id, std::vector<double> values) {
    if (values.size() != columns_.size())
      fail(ErrorKind::Validation, "row width mismatch for subject " + subject_id);
    if (!row_index_.emplace(subject_id, subject_ids_.size()).second)
      fail(ErrorKind::Validation, "duplicate subject_id: " + subject_id);
    subject_ids_.push_back(subject_id);
    rows_.push_back(std::move(values));
  }

  int column_index(const std::string& name) const {
    auto it = col_index_.find(name);
    return it == col_index_.end() ? -1 : static_cast<int>(it->second);
  }

  int row_index(const std::string& subject_id) const {
    auto it = row_index_.find(subject_id);
    return it == row_index_.end() ? -1 : static_cast<int>(it->second);
  }

  double value(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }
  void set_value(std::size_t row, std::size_t col, double v) { rows_.at(row).at(col) = v; }

  std::vector<double> column_values(const std::string& name) const {
    int j = column_index(name);
    if (j < 0) fail(ErrorKind::Validation, "no such column: " + name);
    std::vector<double> out(n_rows());
    for (std::size_t i = 0; i < n_rows(); ++i) out[i] = rows_[i][j];
    return out;
  }

  FeatureTable select_columns(std::span<const std::string> names) const {
    FeatureTable out{std::vector<std::string>(names.begin(), names.end())};
    std::vector<int> idx;
    idx.reserve(names.size());
    for (const auto& n : names) {
      int j = column_index(n);
      if (j < 0) fail(ErrorKind::Validation, "no such column: " + n);
      idx.push_back(j);
    }
    for (std::size_t i = 0; i < n_rows(); ++i) {
      std::vector<double> row(idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) row[k] = rows_[i][idx[k]];
      out.add_row(subject_ids_[i], std::move(row));
    }
    return out;
  }

  FeatureTable select_rows(std::span<const int> row_indices) const {
    FeatureTable out{columns_};
    for (int i : row_indices) {
      if (i < 0 || static_cast<std::size_t>(i) >= n_rows())
        fail(ErrorKind::Validation, "row index out of range");
      out.add_row(subject_ids_[i], rows_[i]);
    }
    return out;
  }

  bool has_missing() const {
    for (const auto& r : rows_)
      for (double v : r)
        if (is_missing(v)) return true;
    return false;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> subject_ids_;
  std::vector<std::vector<double>> rows_;
  std::unordered_map<std::string, std::size_t> col_index_;
  std::unordered_map<std::string, std::size_t> row_index_;
};

}  // namespace gliomorph::volio
