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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rydhol/scenario.hpp"

namespace rydhol::expcli {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The twelve CSV columns in order.
const std::vector<std::string>& csv_columns();

/// Header plus one line per row, LF endings, floats with 12 significant
/// digits. Contains nothing run-dependent, so equal sweeps give equal bytes.
std::string csv_text(const SweepResult& r);
void emit_csv(const SweepResult& r, const std::string& path);

/// JSON sidecar: scenario echo, version, timestamp, wall time, row errors
/// and physicality extremes.
std::string metadata_json(const SweepResult& r);
void emit_metadata(const SweepResult& r, const std::string& path);

/// Lines: fidelity against the innermost swept axis, one series per
/// combination of the other swept axes. Heatmap: the two innermost swept
/// axes, one panel per combination of the rest, banded at 0.96 and 0.99.
/// Throws ReportError when the grid has too few swept axes.
std::string svg_text(const SweepResult& r, PlotKind kind);
void emit_svg(const SweepResult& r, PlotKind kind, const std::string& path);

/// Heatmap band for a fidelity: 0 for F < 0.96, 1 for 0.96 <= F < 0.99,
/// 2 for F >= 0.99.
int fidelity_band(double f);

}  // namespace rydhol::expcli
