#include "dfsqec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dfsqec {

namespace {

std::string fmt12(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string fmt_coord(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_field(const std::string& text, std::size_t line_no) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Panel {
  double left, top, width, height;
  double x_min, x_max, y_min, y_max;

  [[nodiscard]] double sx(double x) const {
    return left + (x - x_min) / (x_max - x_min) * width;
  }
  [[nodiscard]] double sy(double y) const {
    return top + (y_max - y) / (y_max - y_min) * height;
  }
};

void draw_axes(std::ostream& os, const Panel& p, const std::string& y_label) {
  os << "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"" << fmt_coord(p.left) << "\" y=\"" << fmt_coord(p.top) << "\" width=\""
     << fmt_coord(p.width) << "\" height=\"" << fmt_coord(p.height)
     << "\" fill=\"none\" stroke=\"#333\"/>\n";
  constexpr int kTicks = 6;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = p.x_min + (p.x_max - p.x_min) * i / kTicks;
    const double yv = p.y_min + (p.y_max - p.y_min) * i / kTicks;
    const double x = p.sx(xv);
    const double y = p.sy(yv);
    os << "<line x1=\"" << fmt_coord(x) << "\" y1=\"" << fmt_coord(p.top) << "\" x2=\""
       << fmt_coord(x) << "\" y2=\"" << fmt_coord(p.top + p.height)
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << fmt_coord(x) << "\" y=\"" << fmt_coord(p.top + p.height + 15)
       << "\" text-anchor=\"middle\">" << fmt12(std::round(xv * 100.0) / 100.0) << "</text>\n";
    os << "<line x1=\"" << fmt_coord(p.left) << "\" y1=\"" << fmt_coord(y) << "\" x2=\""
       << fmt_coord(p.left + p.width) << "\" y2=\"" << fmt_coord(y) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << fmt_coord(p.left - 6) << "\" y=\"" << fmt_coord(y + 4)
       << "\" text-anchor=\"end\">" << fmt12(std::round(yv * 1000.0) / 1000.0) << "</text>\n";
  }
  os << "<text x=\"" << fmt_coord(p.left + p.width / 2) << "\" y=\""
     << fmt_coord(p.top + p.height + 32) << "\" text-anchor=\"middle\">kappa0</text>\n";
  os << "<text x=\"" << fmt_coord(p.left - 44) << "\" y=\"" << fmt_coord(p.top + p.height / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt_coord(p.left - 44) << ' '
     << fmt_coord(p.top + p.height / 2) << ")\">" << y_label << "</text>\n";
  os << "</g>\n";
}

// Dense closed-form curve over the sweep range, or nothing if there is none.
std::vector<std::pair<double, double>> analytic_curve(const ScenarioResult& r) {
  std::vector<std::pair<double, double>> curve;
  if (r.rows.empty()) return curve;
  const double lo = r.rows.front().kappa0;
  const double hi = r.rows.back().kappa0;
  constexpr int kSamples = 240;
  for (int i = 0; i <= kSamples; ++i) {
    const double k = hi > lo ? lo + (hi - lo) * i / kSamples : lo;
    const auto fe = analytic_reference(r.config.scenario, r.config.noise_spec(k),
                                       r.config.ancilla_purity);
    if (!fe) return {};
    curve.emplace_back(k, *fe);
    if (hi <= lo) break;
  }
  return curve;
}

}  // namespace

// ---------------------------------------------------------------------------
// CSV

void emit_csv(const ScenarioResult& result, std::ostream& os) {
  const ScenarioConfig& c = result.config;
  os << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    const MetricReport& m = row.report;
    os << scenario_name(c.scenario) << ',' << noise_kind_name(c.kind) << ','
       << coupling_case_name(c.coupling) << ',' << fmt12(row.kappa0) << ',' << fmt12(c.ratio)
       << ',' << fmt12(c.ancilla_purity) << ',' << fmt12(m.correlations[0]) << ','
       << fmt12(m.correlations[1]) << ',' << fmt12(m.correlations[2]) << ',' << fmt12(m.fe)
       << ',' << (m.fe_analytic ? fmt12(*m.fe_analytic) : std::string()) << ','
       << fmt12(m.polarizations[0]) << ',' << fmt12(m.polarizations[1]) << ','
       << fmt12(m.polarizations[2]) << ',' << fmt12(m.p) << '\n';
  }
}

void write_csv(const ScenarioResult& result, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  emit_csv(result, os);
  os.flush();
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<ScenarioResult> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("csv: unexpected header");

  std::vector<ScenarioResult> results;
  std::string previous_key;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == kCsvHeader) {
      previous_key.clear();
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 15) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 15 fields");
    }
    const std::string key = f[0] + ',' + f[1] + ',' + f[2] + ',' + f[4] + ',' + f[5];
    if (results.empty() || key != previous_key) {
      ScenarioResult r;
      try {
        r.config.scenario = parse_scenario(f[0]);
        r.config.kind = parse_noise_kind(f[1]);
        r.config.coupling = parse_coupling_case(f[2]);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": " + e.what());
      }
      r.config.ratio = parse_field(f[4], line_no);
      r.config.ancilla_purity = parse_field(f[5], line_no);
      results.push_back(std::move(r));
      previous_key = key;
    }
    ScenarioResult& r = results.back();
    ScenarioRow row;
    row.kappa0 = parse_field(f[3], line_no);
    row.noise = r.config.noise_spec(row.kappa0);
    row.report.correlations = {parse_field(f[6], line_no), parse_field(f[7], line_no),
                               parse_field(f[8], line_no)};
    row.report.fe = parse_field(f[9], line_no);
    if (!f[10].empty()) row.report.fe_analytic = parse_field(f[10], line_no);
    row.report.polarizations = {parse_field(f[11], line_no), parse_field(f[12], line_no),
                                parse_field(f[13], line_no)};
    row.report.p = parse_field(f[14], line_no);
    r.config.sweep.push_back(row.kappa0);
    r.rows.push_back(std::move(row));
  }
  return results;
}

std::vector<ScenarioResult> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_csv(is);
}

// ---------------------------------------------------------------------------
// SVG

std::vector<std::string> series_labels(std::span<const ScenarioResult> results) {
  std::map<std::string, int> counts;
  for (const auto& r : results) ++counts[std::string(scenario_name(r.config.scenario))];
  std::vector<std::string> labels;
  for (const auto& r : results) {
    std::string label(scenario_name(r.config.scenario));
    if (counts[label] > 1) {
      label += " (" + std::string(noise_kind_name(r.config.kind)) + ", case " +
               std::string(coupling_case_name(r.config.coupling)) + ", ratio " +
               fmt12(r.config.ratio) + ", purity " + fmt12(r.config.ancilla_purity) + ")";
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

void emit_chart(std::span<const ScenarioResult> results, std::ostream& os,
                const ChartOptions& options) {
  if (results.empty()) throw std::invalid_argument("emit_chart: no results");
  const std::vector<std::string> labels = series_labels(results);

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double fe_min = 1.0;
  double p_min = 1.0;
  double fe_max = 1.0;
  double p_max = 1.0;
  std::vector<std::vector<std::pair<double, double>>> curves;
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      x_min = std::min(x_min, row.kappa0);
      x_max = std::max(x_max, row.kappa0);
      if (std::isfinite(row.report.fe)) {
        fe_min = std::min(fe_min, row.report.fe);
        fe_max = std::max(fe_max, row.report.fe);
      }
      if (std::isfinite(row.report.p)) {
        p_min = std::min(p_min, row.report.p);
        p_max = std::max(p_max, row.report.p);
      }
    }
    curves.push_back(analytic_curve(r));
    for (const auto& [k, fe] : curves.back()) {
      fe_min = std::min(fe_min, fe);
      fe_max = std::max(fe_max, fe);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  auto pad = [](double& lo, double& hi) {
    const double span = std::max(hi - lo, 0.1);
    lo -= 0.05 * span;
    hi += 0.05 * span;
  };
  pad(fe_min, fe_max);
  pad(p_min, p_max);

  const double margin_left = 70.0;
  const double margin_top = 30.0;
  const double legend_width = 200.0;
  const double plot_width = options.width - margin_left - legend_width - 20.0;
  const int panels = options.polarization ? 2 : 1;
  const double panel_gap = 60.0;
  const double height = margin_top + panels * options.panel_height + (panels - 1) * panel_gap + 50.0;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
     << fmt_coord(height) << "\" viewBox=\"0 0 " << options.width << ' ' << fmt_coord(height)
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const Panel fe_panel{margin_left, margin_top, plot_width, static_cast<double>(options.panel_height),
                       x_min, x_max, fe_min, fe_max};
  const Panel p_panel{margin_left, margin_top + options.panel_height + panel_gap, plot_width,
                      static_cast<double>(options.panel_height), x_min, x_max, p_min, p_max};

  draw_axes(os, fe_panel, "Fe");
  if (options.polarization) draw_axes(os, p_panel, "P");

  for (std::size_t s = 0; s < results.size(); ++s) {
    const std::string color = kPalette[s % std::size(kPalette)];
    const std::string series = xml_escape(labels[s]);
    os << "<g class=\"series\" data-series=\"" << series << "\">\n";
    if (!curves[s].empty()) {
      os << "<polyline class=\"analytic\" fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < curves[s].size(); ++i) {
        os << (i ? " " : "") << fmt_coord(fe_panel.sx(curves[s][i].first)) << ','
           << fmt_coord(fe_panel.sy(curves[s][i].second));
      }
      os << "\"/>\n";
    }
    for (const auto& row : results[s].rows) {
      if (!std::isfinite(row.report.fe)) continue;
      os << "<circle class=\"marker\" data-series=\"" << series << "\" cx=\""
         << fmt_coord(fe_panel.sx(row.kappa0)) << "\" cy=\"" << fmt_coord(fe_panel.sy(row.report.fe))
         << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    }
    if (options.polarization) {
      for (const auto& row : results[s].rows) {
        if (!std::isfinite(row.report.p)) continue;
        const double cx = p_panel.sx(row.kappa0);
        const double cy = p_panel.sy(row.report.p);
        os << "<rect class=\"marker-p\" data-series=\"" << series << "\" x=\""
           << fmt_coord(cx - 3) << "\" y=\"" << fmt_coord(cy - 3)
           << "\" width=\"6\" height=\"6\" fill=\"" << color << "\"/>\n";
      }
    }
    os << "</g>\n";
  }

  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  const double lx = margin_left + plot_width + 16.0;
  for (std::size_t s = 0; s < results.size(); ++s) {
    const double ly = margin_top + 10.0 + 20.0 * static_cast<double>(s);
    const std::string color = kPalette[s % std::size(kPalette)];
    os << "<g class=\"legend-entry\"><circle cx=\"" << fmt_coord(lx) << "\" cy=\"" << fmt_coord(ly)
       << "\" r=\"4\" fill=\"" << color << "\"/><text x=\"" << fmt_coord(lx + 10) << "\" y=\""
       << fmt_coord(ly + 4) << "\">" << xml_escape(labels[s]) << "</text></g>\n";
  }
  os << "</g>\n</svg>\n";
}

void write_chart(std::span<const ScenarioResult> results, const std::filesystem::path& path,
                 const ChartOptions& options) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  emit_chart(results, os, options);
  os.flush();
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace dfsqec
