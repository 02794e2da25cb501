#pragma once

#include <string>

#include <json.hpp>

#include <loglin/cascade.hpp>

namespace loglin::cli {

/// Full certificate bundle as JSON; matrices are arrays of rows.
nlohmann::json bundle_to_json(const synthesis::CertBundle& b);
synthesis::CertBundle bundle_from_json(const nlohmann::json& j);

void save_bundle(const std::string& path, const synthesis::CertBundle& b);
synthesis::CertBundle load_bundle(const std::string& path);

}  // namespace loglin::cli
