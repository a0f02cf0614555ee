#pragma once

#include <string>

#include <json.hpp>

#include "cvgme/circuit.hpp"
#include "cvgme/covariance.hpp"
#include "cvgme/partitions.hpp"
#include "cvgme/search.hpp"
#include "cvgme/witness.hpp"

// JSON forms of the domain types. Mode labels are 1-based on disk.
namespace cvgme::io {

using json = nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const CovarianceMatrix& gamma);
CovarianceMatrix cm_from_json(const json& j);

json to_json(const TreeSpec& tree);
TreeSpec tree_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);

json to_json(const CircuitSpec& c);
CircuitSpec circuit_from_json(const json& j);

json to_json(const SearchTrace& t);

/// Throws std::runtime_error when the file cannot be read or parsed.
json read_file(const std::string& path);
/// Pretty-printed; doubles keep enough digits to read back identically.
void write_file(const std::string& path, const json& j);

}  // namespace cvgme::io
