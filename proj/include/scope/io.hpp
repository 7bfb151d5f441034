// io.hpp — JSON file formats: state files, channel files, operator files and
// criterion report serialization. Complex matrices are stored as split
// row-major "re"/"im" arrays.

#pragma once

#include "scope/channels.hpp"
#include "scope/criteria.hpp"
#include "scope/linalg.hpp"

#include <json.hpp>

#include <string>

namespace scope {

// Malformed document: wrong kind, missing field, ragged rows, bad shapes.
// The message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParsedState {
    Matrix m;
    int na = 0;
    int nb = 0;
};

nlohmann::json matrix_to_json_parts(const Matrix& m);          // {"re": ..., "im": ...}
Matrix matrix_from_json_parts(const nlohmann::json& j, const std::string& context);

// {"kind":"state","na":..,"nb":..,"re":[[..]],"im":[[..]]}
nlohmann::json state_to_json(const Matrix& rho, int na, int nb);
ParsedState state_from_json(const nlohmann::json& j);

// {"kind":"channel","in_dim":..,"out_dim":..,"kraus":[{"re":..,"im":..},..]}
nlohmann::json channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const nlohmann::json& j, double tol = 1e-9);

nlohmann::json criterion_to_json(const CriterionReport& rep);

// FNV-1a 64-bit hex digest, used to fingerprint input files in reports.
std::string fnv1a_hex(const std::string& bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace scope
