#include "gliomorph/volio/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace gliomorph::volio {

std::string format_double(double v) {
  if (is_missing(v)) return "NA";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& context) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    fail(ErrorKind::Parse, "not a number: \"" + s + "\" (" + context + ")");
  return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Lines of a CSV file, tolerant of a trailing newline and CRLF endings.
std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open CSV: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) fail(ErrorKind::Format, "empty CSV: " + path);
  return rows;
}

double column_median(std::vector<double> values) {
  std::erase_if(values, [](double v) { return is_missing(v); });
  if (values.empty()) return missing_value();
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

Cohort read_cohort_csv(const std::string& path, MissingPolicy missing) {
  auto rows = read_csv(path);
  const auto& header = rows[0];
  if (header.size() < 3 || header[0] != "subject_id" || header[1] != "time_months" ||
      header[2] != "event")
    fail(ErrorKind::Format,
         path + ": cohort CSV header must start with subject_id,time_months,event");

  std::vector<std::string> clinical_cols(header.begin() + 3, header.end());
  Cohort cohort;
  cohort.clinical = FeatureTable{clinical_cols};

  std::unordered_set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    std::string where = path + " row " + std::to_string(r + 1);
    if (cells.size() != header.size())
      fail(ErrorKind::Format, where + ": expected " + std::to_string(header.size()) + " cells");
    SurvivalRecord rec;
    rec.subject_id = cells[0];
    if (rec.subject_id.empty()) fail(ErrorKind::Validation, where + ": empty subject_id");
    if (!ids.insert(rec.subject_id).second)
      fail(ErrorKind::Validation, where + ": duplicate subject_id " + rec.subject_id);
    rec.time_months = parse_double(cells[1], where + " time_months");
    if (!(rec.time_months > 0.0))
      fail(ErrorKind::Validation, where + ": time_months must be positive");
    if (cells[2] == "1")
      rec.event = true;
    else if (cells[2] == "0")
      rec.event = false;
    else
      fail(ErrorKind::Parse, where + ": event must be 0 or 1, got \"" + cells[2] + "\"");

    std::vector<double> clin(clinical_cols.size());
    for (std::size_t j = 0; j < clinical_cols.size(); ++j) {
      const std::string& cell = cells[3 + j];
      if (cell == "NA") {
        if (missing == MissingPolicy::Error)
          fail(ErrorKind::Validation,
               where + ": missing value in column " + clinical_cols[j] +
                   " (enable median imputation to allow)");
        clin[j] = missing_value();
      } else {
        clin[j] = parse_double(cell, where + " " + clinical_cols[j]);
      }
    }
    cohort.records.push_back(std::move(rec));
    cohort.clinical.add_row(cells[0], std::move(clin));
  }

  if (missing == MissingPolicy::ImputeMedian) {
    for (std::size_t j = 0; j < cohort.clinical.n_cols(); ++j) {
      double med = column_median(cohort.clinical.column_values(cohort.clinical.columns()[j]));
      for (std::size_t i = 0; i < cohort.clinical.n_rows(); ++i) {
        if (is_missing(cohort.clinical.value(i, j))) {
          if (is_missing(med))
            fail(ErrorKind::Validation, "column " + cohort.clinical.columns()[j] +
                                            " is entirely missing; cannot impute");
          cohort.clinical.set_value(i, j, med);
        }
      }
    }
  }
  return cohort;
}

void write_cohort_csv(const std::string& path, const Cohort& cohort) {
  if (cohort.clinical.n_rows() != cohort.records.size())
    fail(ErrorKind::Validation, "cohort records and clinical rows differ in length");
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write CSV: " + path);
  out << "subject_id,time_months,event";
  for (const auto& c : cohort.clinical.columns()) out << "," << c;
  out << "\n";
  for (std::size_t i = 0; i < cohort.records.size(); ++i) {
    const auto& rec = cohort.records[i];
    if (cohort.clinical.subject_ids()[i] != rec.subject_id)
      fail(ErrorKind::Validation, "cohort records and clinical rows out of order");
    out << rec.subject_id << "," << format_double(rec.time_months) << ","
        << (rec.event ? "1" : "0");
    for (std::size_t j = 0; j < cohort.clinical.n_cols(); ++j)
      out << "," << format_double(cohort.clinical.value(i, j));
    out << "\n";
  }
  if (!out) fail(ErrorKind::Io, "failed writing CSV: " + path);
}

FeatureTable read_table_csv(const std::string& path) {
  auto rows = read_csv(path);
  const auto& header = rows[0];
  if (header.empty() || header[0] != "subject_id")
    fail(ErrorKind::Format, path + ": first column must be subject_id");
  FeatureTable table{std::vector<std::string>(header.begin() + 1, header.end())};
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    std::string where = path + " row " + std::to_string(r + 1);
    if (cells.size() != header.size())
      fail(ErrorKind::Format, where + ": expected " + std::to_string(header.size()) + " cells");
    std::vector<double> vals(cells.size() - 1);
    for (std::size_t j = 1; j < cells.size(); ++j)
      vals[j - 1] = cells[j] == "NA" ? missing_value() : parse_double(cells[j], where);
    table.add_row(cells[0], std::move(vals));
  }
  return table;
}

void write_table_csv(const std::string& path, const FeatureTable& table) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write CSV: " + path);
  out << "subject_id";
  for (const auto& c : table.columns()) out << "," << c;
  out << "\n";
  for (std::size_t i = 0; i < table.n_rows(); ++i) {
    out << table.subject_ids()[i];
    for (std::size_t j = 0; j < table.n_cols(); ++j) out << "," << format_double(table.value(i, j));
    out << "\n";
  }
  if (!out) fail(ErrorKind::Io, "failed writing CSV: " + path);
}

}  // namespace gliomorph::volio
