#pragma once

// JSON documents for polytopes, closed forms, solver results and
// certificates, plus the construction recipe format read by the CLI.

#include <string>

#include <json.hpp>

#include "isoperi/constructions.hpp"
#include "isoperi/positions.hpp"
#include "isoperi/spectral.hpp"

namespace isoperi::io {

using Json = nlohmann::json;

// {"dim", "hrep": [{"normal", "offset"}], "vrep": [[...]]}. hrep is
// written only when the origin is interior.
Json polytope_to_json(const Polytope& p);
// Prefers vrep when both are present. UsageError on a malformed document.
Polytope polytope_from_json(const Json& doc);

Json to_json(const ClosedForms& f);
Json to_json(const PositionResult& r);
Json to_json(const SchattenCheck& s);
Json to_json(const BLDecomposition& d);
Json to_json(const SpectralCertificate& c);
Json to_json(const Matrix& m);

// {"family": ..., "params": {...}}; UsageError naming the offending JSON
// pointer when the recipe does not fit the schema.
Construction build_recipe(const Json& recipe);

// UsageError on a parse failure, IoError when the file cannot be read.
Json parse_json(const std::string& text, const std::string& where);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Key-sorted, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace isoperi::io
