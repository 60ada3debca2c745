// Copyright 2026 The omnr Authors
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

#include <json.hpp>

#include "omnr/dynamics.hpp"
#include "omnr/params.hpp"
#include "omnr/spectra.hpp"
#include "omnr/verify.hpp"

namespace omnr {

/// Column names in output order. S1,S2 become S_plus,S_minus in the
/// supermode basis.
std::vector<std::string> csv_columns(Basis basis);

/// Header plus one row per point, 17 significant digits, '\n' line ends.
std::string to_csv(const SpectraBundle& bundle);

/// Column-oriented mirror of the CSV plus bundle metadata. Non-finite
/// values become null; isolation_flagged marks them.
nlohmann::json to_json(const SpectraBundle& bundle);

nlohmann::json to_json(const PhysicalConfig& cfg);
nlohmann::json to_json(const StabilityReport& report);
nlohmann::json to_json(const CovarianceReport& report);
nlohmann::json to_json(const ParsevalReport& report);
nlohmann::json to_json(const SingleModeCheck& check);

/// M, the input map (both row-major [re, im] pairs), channels and spectrum.
nlohmann::json matrices_json(const DriftSystem& sys);

/// Deterministic text: two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace omnr
