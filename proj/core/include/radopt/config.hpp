#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace radopt {

/// Raised on malformed config text; carries the offending line number.
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Flat `key = value` configuration with `[section]` headers. Section names
/// may carry a label ("[optimizer rad]" -> name "optimizer", label "rad").
/// Blank lines and '#' comments are ignored. Repeated sections are kept in
/// file order.
struct ConfigSection {
  std::string name;
  std::string label;
  std::map<std::string, std::string> entries;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
};

struct Config {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(const std::string& name) const;
  std::vector<const ConfigSection*> find_all(const std::string& name) const;
};

Config parse_config(const std::string& text);
Config parse_config_file(const std::string& path);

/// Comma-separated unsigned integers ("1,2,3").
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace radopt
