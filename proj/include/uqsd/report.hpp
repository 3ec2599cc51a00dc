// Copyright 2026 The uqsd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * CSV/JSON serialization, run manifests, and the flat `key = value` config
 * format. CSV numbers carry 6 decimals; JSON numbers carry full precision.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uqsd/linalg.hpp"
#include "uqsd/montecarlo.hpp"
#include "uqsd/optimizer.hpp"
#include "uqsd/povm.hpp"

namespace uqsd::report {

using nlohmann::json;

inline constexpr std::string_view kTableHeader = "m,kappa,p_in,p_b,p_c,p_s";
inline constexpr std::string_view kSweepHeader = "kappa,p_b,p_c,p_in,p_s";
inline constexpr int kCsvDecimals = 6;

/// Malformed config file or flag value.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string fixed(double value, int decimals = kCsvDecimals);

void write_table_csv(std::ostream &os, const std::vector<OptimumRow> &rows);
void write_sweep_csv(std::ostream &os, const SweepCurve &curve);

json to_json(const OperatorMatrix &m);
/// Inverse of to_json(OperatorMatrix). Throws ParseError.
OperatorMatrix matrix_from_json(const json &j);
json to_json(Complex z);
json to_json(const SystemParams &p);
json to_json(const OptimumRow &row);
json to_json(const DiscriminationReport &r);
json to_json(const TrialStats &s);
json to_json(const AuditVerdict &v);

/// Aligned complex matrix, one row per line.
std::string pretty(const OperatorMatrix &m, int precision = 6);

struct RunManifest {
    std::string command;
    json parameters;
    std::string version;
    json tolerances;
    std::string timestamp;  // ISO-8601 UTC
};

/// Fills version, the tolerance table and the current time.
RunManifest make_manifest(std::string command, json parameters);
json to_json(const RunManifest &m);

/// `<output>.manifest.json`
std::string manifest_path(const std::string &output);

/// One `key = value` per line; blank lines and lines starting with '#' are
/// skipped. Throws ParseError on a line without '=' or with an empty key.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream &is);

/// "0.6", "0.8i", "-i", "0.6+0.8i", "(0.6,0.8)". Throws ParseError.
Complex parse_complex(std::string_view text);
/// "lo:hi:step". Throws ParseError.
KappaRange parse_kappa_range(std::string_view text);
/// "0,1,2,10". Throws ParseError.
std::vector<unsigned> parse_m_list(std::string_view text);

}  // namespace uqsd::report
