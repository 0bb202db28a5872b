#pragma once

#include <json.hpp>
#include <string>

namespace tla {

using Json = nlohmann::ordered_json;

// 17 significant digits, the form every output file uses.
std::string fmt17(double v);

// Pretty JSON with fixed key order and %.17g floats.
std::string to_json_text(const Json& j);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace tla
