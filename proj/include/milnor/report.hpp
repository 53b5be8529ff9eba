#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "milnor/oracle.hpp"
#include "milnor/polar.hpp"
#include "milnor/szafraniec.hpp"

namespace milnor {

/// Insertion-ordered so that dumps are byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Rational& q);
Json to_json(const RationalVector& v);
Json to_json(const Vec& v);
Json to_json(const OracleConfig& cfg);
Json to_json(const DegreeReport& r, const RingPtr& ring);
Json to_json(const NumericDegree& d);
Json to_json(const EulerReport& r, const RingPtr& ring);
Json to_json(const IsolationEvidence& e);
Json to_json(const IdentityCheck& c);
Json to_json(const PolarIndexReport& r);
Json to_json(const LeIomdineReport& r);
Json to_json(const SzafraniecPair& p, const Weights& w);

/// Top-level report: schema_version, input, command, results, evidence and
/// (only when `timing` is set) timing.
Json make_report(const std::string& command, const Json& input, const Json& results,
                 const std::vector<std::string>& evidence, std::optional<double> timing = std::nullopt);

/// Failure report; `results` is replaced by `error`.
Json make_error_report(const std::string& command, const Json& input, int exit_code, const std::string& kind,
                       const std::string& message);

/// Plain-text rendering of a report for the terminal.
std::string render_text(const Json& report);

}  // namespace milnor
