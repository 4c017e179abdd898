#pragma once

#include <string>

#include <json.hpp>

namespace effscore::cli {

using Json = nlohmann::ordered_json;

/// Serializes with insertion-ordered keys and every floating-point number in
/// 17 significant digits, independent of the locale. Non-finite numbers
/// become null.
std::string dump(const Json& value, int indent = 2);

}  // namespace effscore::cli
