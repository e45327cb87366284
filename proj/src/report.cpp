#include "gliomorph/pipeline/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gliomorph/error.hpp"
#include "gliomorph/volio/csv.hpp"

namespace gliomorph::pipeline {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  return out;
}

void close_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) fail(ErrorKind::Io, "failed writing " + path);
}

std::string cell(double v) { return volio::is_missing(v) ? "NA" : volio::format_double(v); }

// Fixed-point rendering for SVG coordinates; snprintf in the default "C"
// locale is deterministic.
std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

const char* kPalette[] = {"#2f6fb3", "#c23b3b", "#3a9c5f", "#8a5cb8", "#c08a2d", "#47a3a8"};
constexpr int kPaletteSize = 6;

}  // namespace

void write_selection_table_csv(const std::string& path, const SelectionReport& report) {
  auto out = open_out(path);
  out << "feature,beta,hr,hr_ci_low,hr_ci_high,p,selected\n";
  for (const auto& e : report.entries) {
    out << e.feature << "," << cell(e.fit.beta) << "," << cell(e.fit.hr) << ","
        << cell(e.fit.ci_low) << "," << cell(e.fit.ci_high) << "," << cell(e.fit.p) << ","
        << (e.selected ? 1 : 0) << "\n";
  }
  close_out(out, path);
}

void write_cindex_table_csv(const std::string& path, const CVReport& report) {
  auto out = open_out(path);
  out << "feature_set,mean_cindex,ci_low,ci_high,repeats_completed,aborted_repeats,fallback_folds\n";
  for (const auto& r : report.results) {
    out << r.set_name << "," << cell(r.mean_cindex) << "," << cell(r.ci_low) << ","
        << cell(r.ci_high) << "," << r.per_repeat.size() << "," << r.aborted_repeats << ","
        << r.fallback_folds << "\n";
  }
  close_out(out, path);
}

void write_decile_table_csv(const std::string& path, const DecileResult& result) {
  auto out = open_out(path);
  out << "feature,cutoff,n_high,n_rest,pct_short,logrank_p,significant\n";
  for (const auto& r : result.rows) {
    out << r.feature << "," << cell(r.cutoff) << "," << r.n_high << "," << r.n_rest << ","
        << cell(r.pct_short) << "," << cell(r.logrank_p) << "," << (r.significant ? 1 : 0)
        << "\n";
  }
  close_out(out, path);
}

void write_km_curves_csv(const std::string& path, const NamedCurves& curves) {
  auto out = open_out(path);
  out << "curve,time,survival\n";
  for (const auto& [name, curve] : curves) {
    out << name << ",0,1\n";
    for (std::size_t k = 0; k < curve.times.size(); ++k)
      out << name << "," << volio::format_double(curve.times[k]) << ","
          << volio::format_double(curve.probs[k]) << "\n";
  }
  close_out(out, path);
}

std::string render_km_svg(const NamedCurves& curves) {
  const double width = 720, height = 480;
  const double left = 70, right = 24, top = 24, bottom = 56;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  double t_max = 1.0;
  for (const auto& [name, curve] : curves)
    if (!curve.times.empty()) t_max = std::max(t_max, curve.times.back());

  auto x = [&](double t) { return left + t / t_max * plot_w; };
  auto y = [&](double s) { return top + (1.0 - s) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" +
         px(height) + "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes and ticks
  svg += "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
  svg += "<path d=\"M" + px(left) + " " + px(top) + " V" + px(top + plot_h) + " H" +
         px(left + plot_w) + "\"/>\n";
  svg += "</g>\n";
  svg += "<g font-family=\"monospace\" font-size=\"12\" fill=\"#333\">\n";
  for (int i = 0; i <= 5; ++i) {
    double t = t_max * i / 5;
    svg += "<line x1=\"" + px(x(t)) + "\" y1=\"" + px(top + plot_h) + "\" x2=\"" + px(x(t)) +
           "\" y2=\"" + px(top + plot_h + 5) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + px(x(t)) + "\" y=\"" + px(top + plot_h + 20) +
           "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    double s = i / 5.0;
    svg += "<line x1=\"" + px(left - 5) + "\" y1=\"" + px(y(s)) + "\" x2=\"" + px(left) +
           "\" y2=\"" + px(y(s)) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + px(left - 9) + "\" y=\"" + px(y(s) + 4) +
           "\" text-anchor=\"end\">" + tick_label(s) + "</text>\n";
  }
  svg += "<text x=\"" + px(left + plot_w / 2) + "\" y=\"" + px(height - 14) +
         "\" text-anchor=\"middle\">months</text>\n";
  svg += "<text x=\"18\" y=\"" + px(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         px(top + plot_h / 2) + ")\">survival</text>\n";
  svg += "</g>\n";

  int color = 0;
  for (const auto& [name, curve] : curves) {
    std::string d = "M" + px(x(0)) + " " + px(y(1));
    for (std::size_t k = 0; k < curve.times.size(); ++k) {
      d += " H" + px(x(curve.times[k]));
      d += " V" + px(y(curve.probs[k]));
    }
    d += " H" + px(x(t_max));
    svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + kPalette[color % kPaletteSize] +
           "\" stroke-width=\"2\"/>\n";
    ++color;
  }

  // legend, top right inside the plot
  svg += "<g font-family=\"monospace\" font-size=\"12\" fill=\"#333\">\n";
  color = 0;
  for (const auto& [name, curve] : curves) {
    double ly = top + 16 + 18 * color;
    double lx = left + plot_w - 170;
    svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(lx + 24) +
           "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + kPalette[color % kPaletteSize] +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + px(lx + 30) + "\" y=\"" + px(ly) + "\">" + xml_escape(name) +
           "</text>\n";
    ++color;
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void write_km_curves_svg(const std::string& path, const NamedCurves& curves) {
  auto out = open_out(path);
  out << render_km_svg(curves);
  close_out(out, path);
}

void write_selection_freq_csv(const std::string& path, const NamedValues& freqs) {
  auto out = open_out(path);
  out << "feature,frequency\n";
  for (const auto& [name, freq] : freqs)
    out << name << "," << volio::format_double(freq) << "\n";
  close_out(out, path);
}

std::string render_bars_svg(const NamedValues& values, const std::string& axis_label) {
  const double row_h = 22, left = 230, right = 70, top = 24, bottom = 48;
  const double plot_w = 420;
  const double width = left + plot_w + right;
  const double height = top + row_h * static_cast<double>(values.size()) + bottom;

  double scale = 1.0;
  for (const auto& [name, v] : values) scale = std::max(scale, v);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" +
         px(height) + "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"monospace\" font-size=\"12\" fill=\"#333\">\n";

  double base_y = top + row_h * static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double by = top + row_h * static_cast<double>(i);
    double bw = values[i].second / scale * plot_w;
    svg += "<text x=\"" + px(left - 8) + "\" y=\"" + px(by + row_h / 2 + 4) +
           "\" text-anchor=\"end\">" + xml_escape(values[i].first) + "</text>\n";
    svg += "<rect x=\"" + px(left) + "\" y=\"" + px(by + 3) + "\" width=\"" + px(bw) +
           "\" height=\"" + px(row_h - 6) + "\" fill=\"" + kPalette[0] + "\"/>\n";
    svg += "<text x=\"" + px(left + bw + 6) + "\" y=\"" + px(by + row_h / 2 + 4) + "\">" +
           tick_label(values[i].second) + "</text>\n";
  }

  svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(top) + "\" x2=\"" + px(left) + "\" y2=\"" +
         px(base_y) + "\" stroke=\"#333\"/>\n";
  svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(base_y) + "\" x2=\"" + px(left + plot_w) +
         "\" y2=\"" + px(base_y) + "\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double v = scale * i / 4;
    double tx = left + plot_w * i / 4;
    svg += "<line x1=\"" + px(tx) + "\" y1=\"" + px(base_y) + "\" x2=\"" + px(tx) + "\" y2=\"" +
           px(base_y + 5) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + px(tx) + "\" y=\"" + px(base_y + 20) + "\" text-anchor=\"middle\">" +
           tick_label(v) + "</text>\n";
  }
  svg += "<text x=\"" + px(left + plot_w / 2) + "\" y=\"" + px(height - 12) +
         "\" text-anchor=\"middle\">" + xml_escape(axis_label) + "</text>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

void write_selection_freq_svg(const std::string& path, const NamedValues& freqs) {
  auto out = open_out(path);
  out << render_bars_svg(freqs, "selection frequency");
  close_out(out, path);
}

}  // namespace gliomorph::pipeline
