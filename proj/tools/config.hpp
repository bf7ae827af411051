#pragma once

#include <map>
#include <string>

namespace mzm::cli {

// Sectioned key = value runs-configuration files:
//
//   [model]
//   mu_fi = 0.3
//   # comment
//
// Keys are addressed by their dotted name ("model.mu_fi"). Command-line
// overrides of the form section.key=value take precedence over the file.
// Malformed input throws std::invalid_argument (reported as a usage error).
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);

  void apply_override(const std::string& dotted_assignment);

  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  bool has(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

} // namespace mzm::cli
