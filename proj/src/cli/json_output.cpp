#include "json_output.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace effscore::cli {

namespace {

void write_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  std::string text(buf, ec == std::errc() ? end : buf);
  // Keep a marker that this is a real number, e.g. "1" -> "1.0".
  if (text.find_first_of(".eE") == std::string::npos) text += ".0";
  out += text;
}

void write(std::string& out, const Json& value, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, item, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, item, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_double(out, value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string dump(const Json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

}  // namespace effscore::cli
