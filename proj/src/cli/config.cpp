#include "config.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "effscore/error.hpp"

namespace effscore::cli {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Config Config::load(const std::string& path, std::istream& stdin_stream) {
  Config config;
  std::string content;
  if (path == "-") {
    std::ostringstream buf;
    buf << stdin_stream.rdbuf();
    content = buf.str();
    config.base_dir = std::filesystem::current_path();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    content = buf.str();
    config.base_dir = std::filesystem::absolute(path).parent_path();
  }
  try {
    config.doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!config.doc.is_object()) throw ParseError("config must be a JSON object");
  return config;
}

std::string Config::path_of(const char* key) const {
  std::filesystem::path p(text(doc, key));
  if (p.is_relative()) p = base_dir / p;
  return p.string();
}

AttackWindow parse_window(const json& j) {
  AttackWindow w;
  w.baseline = number(j, "baseline");
  w.cost_bound = number(j, "cost_bound");
  w.detect_time = optional_number(j, "detect").value_or(0.0);
  w.recover_time = optional_number(j, "recover");
  w.horizon = number(j, "horizon");
  w.validate();
  return w;
}

EfficiencyParams parse_basic_params(const json& j) {
  EfficiencyParams p{number(j, "beta"), number(j, "alpha")};
  p.validate();
  return p;
}

Recovery parse_status(const json& j) {
  if (!j.is_string()) throw ParseError("status must be a string");
  const auto s = j.get<std::string>();
  if (s == "recovered") return Recovery::recovered;
  if (s == "not_recovered") return Recovery::not_recovered;
  throw ValidationError("status must be 'recovered' or 'not_recovered', got '" + s + "'");
}

GeneralizedParams parse_generalized(const json& j) {
  const double beta = number(j, "beta");
  const json& list = field(j, "factors");
  if (!list.is_array()) throw ParseError("'factors' must be an array");
  std::vector<FactorSpec> increasing;
  std::vector<FactorSpec> decreasing;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& f = list[i];
    FactorSpec spec;
    const std::string direction = text(f, "direction");
    if (direction == "increasing")
      spec.direction = Direction::increasing;
    else if (direction == "decreasing")
      spec.direction = Direction::decreasing;
    else
      throw ValidationError("factor " + std::to_string(i + 1) + ": unknown direction '" +
                            direction + "'");
    spec.transform = MonotoneTransform::from_name(text(f, "transform"),
                                                  optional_number(f, "exponent"));
    spec.bound = number(f, "bound");
    spec.weight = optional_number(f, "alpha");
    if (spec.direction == Direction::increasing) {
      if (!decreasing.empty())
        throw ValidationError("factor " + std::to_string(i + 1) +
                              ": increasing factors must precede decreasing ones");
      increasing.push_back(spec);
    } else {
      decreasing.push_back(spec);
    }
  }
  return GeneralizedParams(beta, std::move(increasing), std::move(decreasing));
}

Eigen::VectorXd parse_values(const json& j) {
  if (!j.is_array()) throw ParseError("'values' must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("'values' must be an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

CombinedSpec parse_combined(const json& j) {
  const json& list = field(j, "components");
  if (!list.is_array()) throw ParseError("'components' must be an array");
  std::vector<CombinedComponent> components;
  for (const json& c : list)
    components.push_back(
        {parse_generalized(field(c, "params")), parse_status(field(c, "status")),
         parse_values(field(c, "values"))});
  return CombinedSpec(std::move(components), parse_values(field(j, "gammas")));
}

Json describe(const GeneralizedParams& params) {
  Json factors = Json::array();
  for (std::size_t k = 0; k < params.factor_count(); ++k) {
    const auto& f = params.factors()[k];
    Json item;
    item["direction"] = std::string(to_string(f.direction));
    item["transform"] = std::string(f.transform.name());
    if (f.transform.kind() == MonotoneTransform::Kind::power)
      item["exponent"] = f.transform.exponent();
    item["bound"] = f.bound;
    item["alpha"] = params.weights()[static_cast<Eigen::Index>(k)];
    item["residual"] = k + 1 == params.factor_count();
    factors.push_back(std::move(item));
  }
  Json out;
  out["beta"] = params.beta();
  out["factors"] = std::move(factors);
  return out;
}

}  // namespace effscore::cli
