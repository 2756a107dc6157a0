#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "steercost/box.hpp"

namespace steercost {

// Box JSON: {"p": [16 numbers]} in Box::index order. Doubles are written with
// round-trip precision, so reading back a written box is bit-exact.
nlohmann::json box_to_json(const Box& box);

// Throws ValidationError for malformed documents and the make_box errors for
// invalid tables.
Box box_from_json(const nlohmann::json& doc);

Box read_box_file(const std::filesystem::path& path);
void write_box_file(const std::filesystem::path& path, const Box& box);

}  // namespace steercost
