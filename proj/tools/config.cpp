#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace mzm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open '" + path + "'");
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: bad section header at line " +
                                    std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::invalid_argument("config: empty section name at line " +
                                    std::to_string(lineno));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    if (key.empty() || section.empty())
      throw std::invalid_argument("config: key outside a section at line " +
                                  std::to_string(lineno));
    cfg.values_[section + "." + key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

void Config::apply_override(const std::string& dotted_assignment) {
  const auto eq = dotted_assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must look like section.key=value: '" +
                                dotted_assignment + "'");
  const std::string key = trim(dotted_assignment.substr(0, eq));
  if (key.find('.') == std::string::npos)
    throw std::invalid_argument("override key must be dotted: '" + key + "'");
  values_[key] = trim(dotted_assignment.substr(eq + 1));
}

double Config::number(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0')
    throw std::invalid_argument("config: '" + key + "' is not a number: '" +
                                it->second + "'");
  return v;
}

int Config::integer(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const long v = std::strtol(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0')
    throw std::invalid_argument("config: '" + key + "' is not an integer: '" +
                                it->second + "'");
  return static_cast<int>(v);
}

std::string Config::text(const std::string& key,
                         const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

bool Config::has(const std::string& key) const {
  return values_.count(key) != 0;
}

} // namespace mzm::cli
