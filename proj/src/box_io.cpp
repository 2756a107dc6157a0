#include "steercost/box_io.hpp"

#include <fstream>
#include <vector>

#include "steercost/errors.hpp"

namespace steercost {

nlohmann::json box_to_json(const Box& box) {
  nlohmann::json doc;
  doc["p"] = std::vector<double>(box.table().begin(), box.table().end());
  return doc;
}

Box box_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("p")) {
    throw ValidationError("box JSON must be an object with a \"p\" array");
  }
  const auto& p = doc.at("p");
  if (!p.is_array()) throw ValidationError("box JSON field \"p\" must be an array");
  std::vector<double> entries;
  entries.reserve(p.size());
  for (const auto& v : p) {
    if (!v.is_number()) throw ValidationError("box JSON field \"p\" must contain only numbers");
    entries.push_back(v.get<double>());
  }
  return make_box(entries);
}

Box read_box_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open box file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("cannot parse box file " + path.string() + ": " + e.what());
  }
  return box_from_json(doc);
}

void write_box_file(const std::filesystem::path& path, const Box& box) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write box file " + path.string());
  out << box_to_json(box).dump() << '\n';
}

}  // namespace steercost
