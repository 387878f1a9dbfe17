// Copyright 2026 The rydhol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rydhol/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rydhol/config.hpp"

namespace rydhol::expcli {

namespace {

std::string g12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ReportError("write to '" + path + "' failed");
}

// Axes in row order.
enum Axis { kModel, kEta, kU12, kKappa, kAlpha, kEpsilon, kAxisCount };

const char* axis_label(int a) {
  static const char* labels[] = {"model", "η", "U12/κz", "κ/κz", "α", "ε"};
  return labels[a];
}

std::size_t axis_size(const Sweep& s, int a) {
  switch (a) {
    case kModel: return s.model.size();
    case kEta: return s.eta.size();
    case kU12: return s.u12.size();
    case kKappa: return s.kappa.size();
    case kAlpha: return s.alpha.size();
    default: return s.epsilon.size();
  }
}

double axis_value(const GridPoint& p, int a) {
  switch (a) {
    case kModel: return static_cast<double>(p.model);
    case kEta: return p.eta;
    case kU12: return p.u12;
    case kKappa: return p.kappa;
    case kAlpha: return p.alpha;
    default: return p.epsilon;
  }
}

std::string axis_text(const GridPoint& p, int a) {
  if (a == kModel) return model::to_string(p.model);
  return std::string(axis_label(a)) + "=" + short_num(axis_value(p, a));
}

std::vector<int> swept_axes(const Sweep& s) {
  std::vector<int> out;
  for (int a = 0; a < kAxisCount; ++a)
    if (axis_size(s, a) > 1) out.push_back(a);
  return out;
}

// Rows grouped by their values on `axes`, in first-appearance order.
std::vector<std::pair<std::string, std::vector<const SweepRow*>>> group_rows(const SweepResult& r,
                                                                            const std::vector<int>& axes) {
  std::vector<std::pair<std::string, std::vector<const SweepRow*>>> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& row : r.rows) {
    std::string key;
    for (int a : axes) key += (key.empty() ? "" : " ") + axis_text(row.point, a);
    if (key.empty()) key = r.scenario.name;
    auto [it, fresh] = index.emplace(key, groups.size());
    if (fresh) groups.push_back({key, {}});
    groups[it->second].second.push_back(&row);
  }
  return groups;
}

struct Frame {
  double x0, y0, w, h;  // plot area in pixels
  double lo_x, hi_x, lo_y, hi_y;

  double px(double x) const { return x0 + (hi_x == lo_x ? 0.5 : (x - lo_x) / (hi_x - lo_x)) * w; }
  double py(double y) const { return y0 + h - (hi_y == lo_y ? 0.5 : (y - lo_y) / (hi_y - lo_y)) * h; }
};

void draw_axes(std::ostringstream& os, const Frame& f, const std::string& x_label, const std::string& y_label) {
  os << "<rect x='" << f.x0 << "' y='" << f.y0 << "' width='" << f.w << "' height='" << f.h
     << "' fill='none' stroke='#333'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.lo_x + (f.hi_x - f.lo_x) * i / 4;
    const double yv = f.lo_y + (f.hi_y - f.lo_y) * i / 4;
    const double x = f.px(xv), y = f.py(yv);
    os << "<line x1='" << x << "' y1='" << f.y0 + f.h << "' x2='" << x << "' y2='" << f.y0 + f.h + 5
       << "' stroke='#333'/>\n";
    os << "<text x='" << x << "' y='" << f.y0 + f.h + 18 << "' font-size='11' text-anchor='middle'>"
       << short_num(xv) << "</text>\n";
    os << "<line x1='" << f.x0 - 5 << "' y1='" << y << "' x2='" << f.x0 << "' y2='" << y << "' stroke='#333'/>\n";
    os << "<text x='" << f.x0 - 8 << "' y='" << y + 4 << "' font-size='11' text-anchor='end'>" << short_num(yv)
       << "</text>\n";
  }
  os << "<text x='" << f.x0 + f.w / 2 << "' y='" << f.y0 + f.h + 38 << "' font-size='13' text-anchor='middle'>"
     << x_label << "</text>\n";
  os << "<text x='" << f.x0 - 52 << "' y='" << f.y0 + f.h / 2 << "' font-size='13' text-anchor='middle' "
     << "transform='rotate(-90 " << f.x0 - 52 << " " << f.y0 + f.h / 2 << ")'>" << y_label << "</text>\n";
}

std::string lines_svg(const SweepResult& r) {
  const auto swept = swept_axes(r.scenario.sweep);
  if (swept.empty()) throw ReportError("lines plot needs at least one swept axis");
  const int x_axis = swept.back();
  const std::vector<int> series_axes(swept.begin(), swept.end() - 1);
  const auto series = group_rows(r, series_axes);

  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& row : r.rows) {
    const double x = axis_value(row.point, x_axis);
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    if (std::isfinite(row.fidelity)) {
      lo_y = std::min(lo_y, row.fidelity);
      hi_y = std::max(hi_y, row.fidelity);
    }
  }
  if (!std::isfinite(lo_y)) lo_y = 0.0, hi_y = 1.0;
  const double pad = std::max(1e-4, 0.05 * (hi_y - lo_y));
  const Frame f{80, 40, 520, 360, lo_x, hi_x, lo_y - pad, hi_y + pad};

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='800' height='460' font-family='sans-serif'>\n";
  os << "<rect width='800' height='460' fill='white'/>\n";
  os << "<text x='340' y='24' font-size='15' text-anchor='middle'>" << r.scenario.name << " ("
     << r.scenario.gate_name() << ")</text>\n";
  draw_axes(os, f, axis_label(x_axis), "F");
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = palette[k % 8];
    std::string path;
    for (const SweepRow* row : series[k].second) {
      if (!std::isfinite(row->fidelity)) continue;
      const double x = f.px(axis_value(row->point, x_axis)), y = f.py(row->fidelity);
      path += (path.empty() ? "M" : " L") + short_num(x) + "," + short_num(y);
      os << "<circle cx='" << x << "' cy='" << y << "' r='2.5' fill='" << color << "'/>\n";
    }
    if (!path.empty()) os << "<path d='" << path << "' fill='none' stroke='" << color << "' stroke-width='1.5'/>\n";
    const double ly = 50 + 20.0 * static_cast<double>(k);
    os << "<line x1='615' y1='" << ly << "' x2='640' y2='" << ly << "' stroke='" << color
       << "' stroke-width='2'/>\n";
    os << "<text x='646' y='" << ly + 4 << "' font-size='12'>" << series[k].first << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap_svg(const SweepResult& r) {
  const Sweep& sweep = r.scenario.sweep;
  const auto swept = swept_axes(sweep);
  if (swept.size() < 2) throw ReportError("heatmap needs two swept axes");
  const int x_axis = swept[swept.size() - 1];
  const int y_axis = swept[swept.size() - 2];
  const std::vector<int> panel_axes(swept.begin(), swept.end() - 2);
  const auto panels = group_rows(r, panel_axes);
  const auto nx = static_cast<double>(axis_size(sweep, x_axis));
  const auto ny = static_cast<double>(axis_size(sweep, y_axis));

  static const char* band_color[] = {"#1b5e20", "#9ccc65", "#fdd835"};
  const double panel_w = 400, width = 60 + panel_w * static_cast<double>(panels.size()) + 170;
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
     << "' height='440' font-family='sans-serif'>\n";
  os << "<rect width='" << width << "' height='440' fill='white'/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto& rows = panels[k].second;
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const SweepRow* row : rows) {
      lo_x = std::min(lo_x, axis_value(row->point, x_axis));
      hi_x = std::max(hi_x, axis_value(row->point, x_axis));
      lo_y = std::min(lo_y, axis_value(row->point, y_axis));
      hi_y = std::max(hi_y, axis_value(row->point, y_axis));
    }
    const Frame f{80 + panel_w * static_cast<double>(k), 40, 300, 320, lo_x, hi_x, lo_y, hi_y};
    const double cw = f.w / std::max(1.0, nx - 1), ch = f.h / std::max(1.0, ny - 1);
    // cells centered on grid values, clipped to the frame
    os << "<clipPath id='clip" << k << "'><rect x='" << f.x0 << "' y='" << f.y0 << "' width='" << f.w
       << "' height='" << f.h << "'/></clipPath>\n<g clip-path='url(#clip" << k << ")'>\n";
    for (const SweepRow* row : rows) {
      const double x = f.px(axis_value(row->point, x_axis)), y = f.py(axis_value(row->point, y_axis));
      const char* color = std::isfinite(row->fidelity) ? band_color[fidelity_band(row->fidelity)] : "#bdbdbd";
      os << "<rect x='" << x - cw / 2 << "' y='" << y - ch / 2 << "' width='" << cw << "' height='" << ch
         << "' fill='" << color << "'/>\n";
    }
    os << "</g>\n";
    draw_axes(os, f, axis_label(x_axis), axis_label(y_axis));
    os << "<text x='" << f.x0 + f.w / 2 << "' y='26' font-size='14' text-anchor='middle'>" << r.scenario.name << " "
       << panels[k].first << "</text>\n";
  }
  const double lx = 60 + panel_w * static_cast<double>(panels.size());
  static const char* band_text[] = {"F &lt; 0.96", "0.96 ≤ F &lt; 0.99", "F ≥ 0.99"};
  for (int b = 0; b < 3; ++b) {
    const double ly = 60 + 24.0 * b;
    os << "<rect x='" << lx << "' y='" << ly - 12 << "' width='16' height='16' fill='" << band_color[2 - b]
       << "'/>\n<text x='" << lx + 22 << "' y='" << ly + 1 << "' font-size='12'>" << band_text[2 - b]
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"scenario",      "gate", "model_kind",  "epsilon",
                                             "alpha",         "kappa_over_kz", "eta", "u12_over_kz",
                                             "tau",           "fidelity",      "min_state_fidelity", "trace_drift"};
  return cols;
}

std::string csv_text(const SweepResult& r) {
  std::ostringstream os;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  const std::string gate = r.scenario.gate_name();
  for (const auto& row : r.rows) {
    const GridPoint& p = row.point;
    os << r.scenario.name << ',' << gate << ',' << model::to_string(p.model) << ',' << g12(p.epsilon) << ','
       << g12(p.alpha) << ',' << g12(p.kappa) << ',' << g12(p.eta) << ',' << g12(row.u12_used) << ','
       << g12(row.tau) << ',' << g12(row.fidelity) << ',' << g12(row.min_state_fidelity) << ','
       << g12(row.trace_drift) << "\n";
  }
  return os.str();
}

void emit_csv(const SweepResult& r, const std::string& path) { write_file(path, csv_text(r)); }

std::string metadata_json(const SweepResult& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario.name;
  j["gate"] = r.scenario.gate_name();
  j["version"] = r.version;
  j["timestamp"] = r.timestamp;
  j["wall_seconds"] = r.seconds;
  j["rows"] = r.rows.size();
  j["config"] = emit_config(r.scenario);
  j["units"] = "rates and energies in kappa_z, times in 1/kappa_z";
  double trace = 0.0, herm = 0.0, min_eig = std::numeric_limits<double>::infinity();
  long steps = 0;
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (!row.ok()) {
      errors.push_back({{"row", i}, {"message", row.error}});
      continue;
    }
    trace = std::max(trace, row.trace_drift);
    herm = std::max(herm, row.hermiticity_drift);
    if (r.scenario.dissipative()) min_eig = std::min(min_eig, row.min_eigenvalue);
    steps += row.steps;
  }
  j["errors"] = errors;
  j["max_trace_drift"] = trace;
  j["max_hermiticity_drift"] = herm;
  if (std::isfinite(min_eig)) j["min_eigenvalue"] = min_eig;
  j["integration_steps"] = steps;
  return j.dump(2) + "\n";
}

void emit_metadata(const SweepResult& r, const std::string& path) { write_file(path, metadata_json(r)); }

std::string svg_text(const SweepResult& r, PlotKind kind) {
  switch (kind) {
    case PlotKind::lines: return lines_svg(r);
    case PlotKind::heatmap: return heatmap_svg(r);
    case PlotKind::none: break;
  }
  throw ReportError("no plot kind selected");
}

void emit_svg(const SweepResult& r, PlotKind kind, const std::string& path) { write_file(path, svg_text(r, kind)); }

int fidelity_band(double f) {
  if (f >= 0.99) return 2;
  if (f >= 0.96) return 1;
  return 0;
}

}  // namespace rydhol::expcli
