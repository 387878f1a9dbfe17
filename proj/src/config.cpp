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

#include "rydhol/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rydhol::expcli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + exact(values[i]);
  return out;
}

class Parser {
 public:
  explicit Parser(int line) : line_(line) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + why);
  }

  double number(const std::string& text) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      fail("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) fail("not a finite number: '" + text + "'");
    return v;
  }

  int integer(const std::string& text) const {
    const double v = number(text);
    if (v != std::floor(v)) fail("not an integer: '" + text + "'");
    return static_cast<int>(v);
  }

  std::vector<double> list(const std::string& text) const {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
      if (item.empty()) fail("empty list item");
      if (item.find(':') != std::string::npos) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) fail("range must be lo:hi:step");
        const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
        if (!(step > 0.0) || hi < lo) fail("range needs step > 0 and hi >= lo");
        const auto r = expand_range(lo, hi, step);
        out.insert(out.end(), r.begin(), r.end());
      } else {
        out.push_back(number(item));
      }
    }
    if (out.empty()) fail("empty list");
    return out;
  }

 private:
  int line_;
};

}  // namespace

std::vector<double> expand_range(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ConfigError("range needs step > 0 and hi >= lo");
  std::vector<double> out;
  const long n = std::lround((hi - lo) / step);
  for (long k = 0; k <= n; ++k) {
    double v = lo + static_cast<double>(k) * step;
    if (std::abs(v) < 1e-12 * step) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out.push_back(std::stod(buf));
  }
  return out;
}

Scenario parse_config(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = trim(raw.substr(0, raw.find('#')));
    if (content.empty()) continue;
    const Parser p(line);
    const auto eq = content.find('=');
    if (eq == std::string::npos) p.fail("expected key = value");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (value.empty()) p.fail("missing value for '" + key + "'");

    if (key == "name") {
      s.name = value;
    } else if (key == "gate") {
      if (value == "cnot") s.gate = pulse::GateSpec::cnot();
      else if (value == "cz") s.gate = pulse::GateSpec::cz();
      else if (value == "ccnot") s.gate = pulse::GateSpec::ccnot();
      else if (value != "custom") p.fail("unknown gate '" + value + "'");
    } else if (key == "gate.theta") {
      s.gate.theta = p.number(value);
    } else if (key == "gate.phi") {
      s.gate.phi = p.number(value);
    } else if (key == "gate.gamma") {
      s.gate.gamma = p.number(value);
    } else if (key == "gate.controls") {
      s.gate.n_controls = p.integer(value);
    } else if (key == "system.detuning_ratio") {
      s.detuning_ratio = p.number(value);
    } else if (key == "noise.kappa_z") {
      s.kappa_z = p.number(value);
    } else if (key == "calibration.omega_max") {
      s.calibration.omega_max = p.number(value);
    } else if (key == "calibration.tau") {
      s.calibration.tau = p.number(value);
    } else if (key == "sweep.model") {
      s.sweep.model.clear();
      for (const auto& item : split(value, ',')) {
        try {
          s.sweep.model.push_back(model::parse_model_kind(item));
        } catch (const std::exception& e) {
          p.fail(e.what());
        }
      }
    } else if (key == "sweep.eta") {
      s.sweep.eta = p.list(value);
    } else if (key == "sweep.u12") {
      s.sweep.u12 = p.list(value);
    } else if (key == "sweep.kappa") {
      s.sweep.kappa = p.list(value);
    } else if (key == "sweep.alpha") {
      s.sweep.alpha = p.list(value);
    } else if (key == "sweep.epsilon") {
      s.sweep.epsilon = p.list(value);
    } else if (key == "integrator.points_per_period") {
      s.points_per_period = p.integer(value);
    } else if (key == "output.plot") {
      try {
        s.plot = parse_plot_kind(value);
      } catch (const std::exception& e) {
        p.fail(e.what());
      }
    } else {
      p.fail("unknown key '" + key + "'");
    }
  }
  return s;
}

std::string emit_config(const Scenario& s) {
  std::ostringstream os;
  os << "# gate: " << s.gate_name() << "\n";
  os << "name = " << s.name << "\n";
  os << "gate.theta = " << exact(s.gate.theta) << "\n";
  os << "gate.phi = " << exact(s.gate.phi) << "\n";
  os << "gate.gamma = " << exact(s.gate.gamma) << "\n";
  os << "gate.controls = " << s.gate.n_controls << "\n";
  os << "system.detuning_ratio = " << exact(s.detuning_ratio) << "\n";
  os << "noise.kappa_z = " << exact(s.kappa_z) << "\n";
  os << "calibration.omega_max = " << exact(s.calibration.omega_max) << "\n";
  os << "calibration.tau = " << exact(s.calibration.tau) << "\n";
  os << "sweep.model = ";
  for (std::size_t i = 0; i < s.sweep.model.size(); ++i) os << (i ? ", " : "") << model::to_string(s.sweep.model[i]);
  os << "\n";
  os << "sweep.eta = " << join(s.sweep.eta) << "\n";
  os << "sweep.u12 = " << join(s.sweep.u12) << "\n";
  os << "sweep.kappa = " << join(s.sweep.kappa) << "\n";
  os << "sweep.alpha = " << join(s.sweep.alpha) << "\n";
  os << "sweep.epsilon = " << join(s.sweep.epsilon) << "\n";
  os << "integrator.points_per_period = " << s.points_per_period << "\n";
  os << "output.plot = " << to_string(s.plot) << "\n";
  return os.str();
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_config(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write config '" + path + "'");
  out << emit_config(s);
}

}  // namespace rydhol::expcli
