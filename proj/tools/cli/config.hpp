#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cmm::cli {

/// A setting and where it came from ("file:line" or "--flag"), kept for
/// error messages.
struct Setting {
  std::string value;
  std::string origin;
};

using Settings = std::map<std::string, Setting>;

/// Known keys with the config section each belongs to.
const std::map<std::string, std::string>& known_keys();

/// Parses "key = value" lines with optional [section] headers. '#' and ';'
/// start comments. A key may appear at top level or in its own section.
/// Throws Error(Config) with "name:line:" context on unknown keys, keys in the
/// wrong section, duplicates and malformed lines.
Settings parse_config(std::istream& is, const std::string& name);
Settings read_config_file(const std::string& path);

/// Later settings win.
void merge(Settings& base, const Settings& overrides);

// Typed accessors; malformed values throw Error(Config) citing the origin.
int as_int(const Setting& s);
double as_double(const Setting& s);
bool as_bool(const Setting& s);
std::vector<int> as_int_list(const Setting& s);
/// "4" or "2..5".
std::pair<int, int> as_range(const Setting& s);

}  // namespace cmm::cli
