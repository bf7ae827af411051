#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace mzm::cli {

using ordered_json = nlohmann::ordered_json;

// %.12g with the C locale: 12 significant digits, '.' decimal point.
std::string format_number(double v);

// Row-oriented result sink. All rows must share the schema of the first.
// CSV output is byte-stable: fixed significant digits, '.' decimal
// separator, LF line ends, no locale dependence.
class Emitter {
 public:
  void add_row(ordered_json row);
  // format: "csv" or "json"; empty path writes to stdout.
  void write(const std::string& format, const std::string& path) const;

 private:
  std::string render_csv() const;
  std::string render_json() const;
  std::vector<ordered_json> rows_;
};

} // namespace mzm::cli
