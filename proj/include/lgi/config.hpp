#pragma once

#include <istream>
#include <map>
#include <string>

namespace lgi {

/// Ordered key → value map read from `key = value` lines.
using ConfigMap = std::map<std::string, std::string>;

/// Blank lines and text after '#' are ignored; keys and values are trimmed.
/// Throws LookupError for a line without '=' or with an empty key.
ConfigMap parse_config(std::istream& in);
/// Throws LookupError when the file cannot be opened.
ConfigMap load_config(const std::string& path);

/// Typed accessors; a present but malformed value throws LookupError.
double config_double(const ConfigMap& m, const std::string& key, double fallback);
int config_int(const ConfigMap& m, const std::string& key, int fallback);
std::string config_string(const ConfigMap& m, const std::string& key, const std::string& fallback);

}  // namespace lgi
