#pragma once

// JSON and CSV encodings of the library's result types.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclo/bounds.hpp"
#include "cyclo/circle.hpp"
#include "cyclo/extremal.hpp"
#include "cyclo/measures.hpp"
#include "cyclo/polyarith.hpp"
#include "cyclo/verify.hpp"

namespace cyclo {

using Json = nlohmann::ordered_json;

Json to_json(const CoeffVec& c);  // plain integer array, lowest degree first
Json to_json(const ResidueCell& cell);
Json to_json(const MeasureReport& r);
Json to_json(const MaximizeResult& r, const FactoredModulus& fm);
Json to_json(const FamilyInstance& inst);
Json to_json(std::span<const NamedConstant> table);
Json to_json(const BoundReport& row, bool with_timing = false);

/// Shortest decimal that round-trips the double.
std::string format_real(double v);

std::string measure_csv_header();
std::string to_csv(const MeasureReport& r);

std::string report_csv_header(bool with_timing = false);
std::string to_csv(const BoundReport& row, bool with_timing = false);

/// Header plus one line per row.
std::string reports_to_csv(std::span<const BoundReport> rows, bool with_timing = false);
/// One JSON object per line.
std::string reports_to_jsonl(std::span<const BoundReport> rows, bool with_timing = false);

}  // namespace cyclo
