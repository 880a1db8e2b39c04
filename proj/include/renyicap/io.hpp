// Copyright 2026 The renyicap developers
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

#include <json.hpp>

#include "renyicap/capacity.hpp"
#include "renyicap/channels.hpp"
#include "renyicap/converse.hpp"
#include "renyicap/divergences.hpp"

namespace renyicap::io {

using nlohmann::json;

/// +infinity serializes as the string "inf" so reports stay portable across
/// JSON parsers that reject non-finite numbers.
json number_or_inf(double v);
double number_from(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const json& j);

json ensemble_to_json(const Ensemble& ens);
Ensemble ensemble_from_json(const json& j);

json codespec_to_json(const CodeSpec& spec);
CodeSpec codespec_from_json(const json& j);

json divergence_to_json(const DivergenceValue& v, const std::string& kind,
                        double alpha);
json radius_to_json(const RadiusResult& r);
json bound_to_json(const BoundReport& rep);

/// Reads and parses a JSON file; throws ParseError on missing files or
/// malformed JSON.
json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);

/// Canonical serialization used everywhere a report is emitted or compared:
/// sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace renyicap::io
