#include "radopt/config.hpp"

#include <fstream>
#include <sstream>

namespace radopt {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

const std::string& ConfigSection::get(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) {
    throw std::runtime_error("section [" + name + (label.empty() ? "" : " " + label) +
                             "] is missing key '" + key + "'");
  }
  return it->second;
}

std::string ConfigSection::get_or(const std::string& key, const std::string& fallback) const {
  auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second;
}

double ConfigSection::get_double(const std::string& key) const {
  const std::string& v = get(key);
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("key '" + key + "': '" + v + "' is not a number");
  }
}

double ConfigSection::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t ConfigSection::get_int(const std::string& key) const {
  const std::string& v = get(key);
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("key '" + key + "': '" + v + "' is not an integer");
  }
}

std::int64_t ConfigSection::get_int_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

const ConfigSection* Config::find(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const ConfigSection*> Config::find_all(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = trim(line.substr(0, comment));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigParseError(line_no, "unterminated section header");
      std::string inner = trim(line.substr(1, line.size() - 2));
      if (inner.empty()) throw ConfigParseError(line_no, "empty section name");
      ConfigSection section;
      const auto space = inner.find(' ');
      if (space == std::string::npos) {
        section.name = inner;
      } else {
        section.name = trim(inner.substr(0, space));
        section.label = trim(inner.substr(space + 1));
      }
      cfg.sections.push_back(std::move(section));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigParseError(line_no, "expected 'key = value' or '[section]'");
    }
    if (cfg.sections.empty()) {
      throw ConfigParseError(line_no, "key outside of any [section]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigParseError(line_no, "empty key");
    cfg.sections.back().entries[key] = value;
  }
  return cfg;
}

Config parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const std::string t = trim(cell);
    if (t.empty()) continue;
    seeds.push_back(std::stoull(t));
  }
  if (seeds.empty()) throw std::runtime_error("seed list is empty");
  return seeds;
}

}  // namespace radopt
