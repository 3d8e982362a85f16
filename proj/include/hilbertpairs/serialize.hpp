// Copyright 2026 The hilbertpairs Authors
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

#include <string>
#include <vector>

#include "hilbertpairs/canonical.hpp"
#include "hilbertpairs/coherent.hpp"
#include "hilbertpairs/core.hpp"
#include "hilbertpairs/measure.hpp"
#include "hilbertpairs/paradox.hpp"
#include "hilbertpairs/weak.hpp"
#include "json.hpp"

namespace hp {

using Json = nlohmann::ordered_json;

// Matrices are {"re": [[row], ...], "im": [[row], ...]}.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json to_json(const DomainSpec& d);
DomainSpec domain_from_json(const Json& j);

// A state is a single-row matrix next to its domain.
Json to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

Json to_json(const LinearOperator& op);
LinearOperator operator_from_json(const Json& j);

// Elements carry "label", "weight" and either "factor" (op = F F^+) or a full
// positive "operator"; both are in orthonormal coordinates of the domain basis.
Json to_json(const MeasureFamily& f);
MeasureFamily family_from_json(const Json& j);

Json to_json(const FamilyValidation& v);
Json to_json(const DilationResult& r);
Json to_json(const FrameReport& r);
Json to_json(const CoherentPovmCheck& c);
Json to_json(const EnsembleSummary& s);
Json to_json(const LieClosureReport& r);
Json trajectory_summary_json(const TrajectoryRecord& r);
Json to_json(const ParadoxReport& r);

ParadoxConfig paradox_config_from_json(const Json& j);

// Round-trip decimal text used for every CSV cell.
std::string format_number(double v);
std::string csv_table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);
std::string trajectory_csv(const TrajectoryRecord& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// Pretty JSON with a trailing newline.
std::string dump_json(const Json& j);

struct ParadoxRunResult {
  std::vector<std::string> files;
  std::vector<std::string> failing;
  bool all_pass = true;
};

// Runs the configured scenarios and writes <name>.json, <name>_<table>.csv and summary.json.
ParadoxRunResult run_report(const ParadoxConfig& config, const std::string& out_dir);

}  // namespace hp
