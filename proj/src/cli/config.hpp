#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "effscore/efficiency_basic.hpp"
#include "effscore/efficiency_combined.hpp"
#include "effscore/efficiency_generalized.hpp"
#include "effscore/timeseries.hpp"
#include "json_output.hpp"

namespace effscore::cli {

/// Schema errors (missing keys, wrong JSON types) raise ParseError; values
/// that break a domain invariant raise ValidationError.
struct Config {
  nlohmann::json doc;
  /// Directory against which relative trace paths resolve.
  std::filesystem::path base_dir;

  static Config load(const std::string& path, std::istream& stdin_stream);

  bool has(const char* key) const { return doc.contains(key) && !doc[key].is_null(); }
  std::string path_of(const char* key) const;
};

AttackWindow parse_window(const nlohmann::json& j);
EfficiencyParams parse_basic_params(const nlohmann::json& j);
Recovery parse_status(const nlohmann::json& j);
GeneralizedParams parse_generalized(const nlohmann::json& j);
Eigen::VectorXd parse_values(const nlohmann::json& j);
CombinedSpec parse_combined(const nlohmann::json& j);

/// Report-side echo of parsed parameters.
Json describe(const GeneralizedParams& params);

}  // namespace effscore::cli
