#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gliomorph/pipeline/results_io.hpp"
#include "gliomorph/survstats/survival_curve.hpp"

namespace gliomorph::pipeline {

using NamedCurves = std::vector<std::pair<std::string, survstats::SurvivalCurve>>;
using NamedValues = std::vector<std::pair<std::string, double>>;

// Flat tables; missing values render as NA.
void write_selection_table_csv(const std::string& path, const SelectionReport& report);
void write_cindex_table_csv(const std::string& path, const CVReport& report);
void write_decile_table_csv(const std::string& path, const DecileResult& result);

// Long-format curve table (curve,time,survival), one leading row per curve
// at time 0 with survival 1.
void write_km_curves_csv(const std::string& path, const NamedCurves& curves);

// Self-contained SVG step plot of the curves.
std::string render_km_svg(const NamedCurves& curves);
void write_km_curves_svg(const std::string& path, const NamedCurves& curves);

void write_selection_freq_csv(const std::string& path, const NamedValues& freqs);

// Horizontal bar chart, fixed [0, 1] axis unless a value exceeds 1.
std::string render_bars_svg(const NamedValues& values, const std::string& axis_label);
void write_selection_freq_svg(const std::string& path, const NamedValues& freqs);

}  // namespace gliomorph::pipeline
