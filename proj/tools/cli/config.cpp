#include "config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "cmm/error.hpp"

namespace cmm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw Error(ErrorKind::Config, origin + ": " + msg);
}

}  // namespace

const std::map<std::string, std::string>& known_keys() {
  static const std::map<std::string, std::string> keys{
      {"test", "case"},         {"alpha", "case"},          {"T", "case"},           {"tracer", "case"},
      {"seed", "case"},         {"k", "solver"},            {"steps", "solver"},     {"remap_stride", "solver"},
      {"epsilon", "solver"},    {"allow_deep", "solver"},   {"out", "output"},       {"image", "output"},
      {"values", "output"},     {"chain", "output"},        {"input", "output"},     {"samples", "diagnostics"},
      {"mass_n", "diagnostics"}, {"width", "render"},       {"height", "render"},    {"mode", "render"},
      {"center_lon", "render"}, {"center_colat", "render"}, {"fov", "render"},       {"time", "render"},
      {"colormap", "render"},   {"vmin", "render"},         {"vmax", "render"},      {"n_list", "mass"},
      {"grid", "mixing"},       {"strides", "remap"},
  };
  return keys;
}

Settings parse_config(std::istream& is, const std::string& name) {
  Settings out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string origin = name + ":" + std::to_string(lineno);
    const auto hash = line.find_first_of("#;");
    line = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const auto& [k, s] : known_keys()) known = known || s == section;
      if (!known) fail(origin, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, "missing key");
    const auto it = known_keys().find(key);
    if (it == known_keys().end()) fail(origin, "unknown key '" + key + "'");
    if (!section.empty() && it->second != section)
      fail(origin, "key '" + key + "' belongs in section [" + it->second + "], not [" + section + "]");
    if (value.empty()) fail(origin, "empty value for '" + key + "'");
    if (out.count(key)) fail(origin, "duplicate key '" + key + "' (first set at " + out[key].origin + ")");
    out[key] = {value, origin};
  }
  return out;
}

Settings read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Config, "cannot open config file '" + path + "'");
  return parse_config(f, path);
}

void merge(Settings& base, const Settings& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
}

int as_int(const Setting& s) {
  int v = 0;
  const auto* end = s.value.data() + s.value.size();
  const auto r = std::from_chars(s.value.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end) fail(s.origin, "expected an integer, got '" + s.value + "'");
  return v;
}

double as_double(const Setting& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s.value, &used);
    if (used == s.value.size()) return v;
  } catch (const std::exception&) {
  }
  fail(s.origin, "expected a number, got '" + s.value + "'");
}

bool as_bool(const Setting& s) {
  if (s.value == "true" || s.value == "1" || s.value == "yes") return true;
  if (s.value == "false" || s.value == "0" || s.value == "no") return false;
  fail(s.origin, "expected true or false, got '" + s.value + "'");
}

std::vector<int> as_int_list(const Setting& s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.value.size()) {
    const auto comma = s.value.find(',', pos);
    const std::string item = trim(s.value.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (item.empty()) fail(s.origin, "malformed list '" + s.value + "'");
    out.push_back(as_int({item, s.origin}));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::pair<int, int> as_range(const Setting& s) {
  const auto dots = s.value.find("..");
  if (dots == std::string::npos) {
    const int k = as_int(s);
    return {k, k};
  }
  const int a = as_int({trim(s.value.substr(0, dots)), s.origin});
  const int b = as_int({trim(s.value.substr(dots + 2)), s.origin});
  if (a > b) fail(s.origin, "empty range '" + s.value + "'");
  return {a, b};
}

}  // namespace cmm::cli
