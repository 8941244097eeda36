#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "pontryagin/realization.hpp"
#include "pontryagin/vessel.hpp"

namespace pontryagin::io {

using Json = nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "1.0";

Json to_json(Complex c);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);

/// Accepts [re, im] pairs or plain real numbers; rejects non-finite values.
Complex complex_from_json(const Json& j, const std::string& what);
Matrix matrix_from_json(const Json& j, const std::string& what);
Vector vector_from_json(const Json& j, const std::string& what);

Json to_json(const Vessel& v);
Json to_json(const Colligation& c);
Json to_json(const Realization& r);

Vessel vessel_from_json(const Json& j);
Colligation colligation_from_json(const Json& j);
Realization realization_from_json(const Json& j);

/// Strips the optional {"schemaVersion", "payload", "metadata"} envelope.
const Json& payload(const Json& doc);
Json envelope(Json payload, std::string_view kind);

Json parse_text(const std::string& text, const std::string& what);
Json read_file(const std::string& path);

/// Compact JSON with sorted keys and 17 significant digits for every float.
std::string emit_json(const Json& j);

/// Header row plus data rows. A report with a "rows" array of objects yields one
/// line per row; any other object becomes a single row of its scalar fields.
std::string emit_csv(const Json& j);

/// format is "json" or "csv"; anything else raises UnsupportedFormat.
std::string emit_report(const Json& j, std::string_view format);

}  // namespace pontryagin::io
