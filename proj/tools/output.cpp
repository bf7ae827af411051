#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace mzm::cli {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void Emitter::add_row(ordered_json row) { rows_.push_back(std::move(row)); }

std::string Emitter::render_csv() const {
  std::string out;
  if (rows_.empty()) return out;
  bool first = true;
  for (auto it = rows_.front().begin(); it != rows_.front().end(); ++it) {
    if (!first) out += ',';
    out += it.key();
    first = false;
  }
  out += '\n';
  for (const auto& row : rows_) {
    first = true;
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (!first) out += ',';
      first = false;
      const auto& v = it.value();
      if (v.is_number_float())
        out += format_number(v.get<double>());
      else if (v.is_number_integer())
        out += std::to_string(v.get<long long>());
      else if (v.is_boolean())
        out += v.get<bool>() ? "true" : "false";
      else
        out += v.get<std::string>();
    }
    out += '\n';
  }
  return out;
}

std::string Emitter::render_json() const {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows_) arr.push_back(row);
  return arr.dump(2) + "\n";
}

void Emitter::write(const std::string& format, const std::string& path) const {
  const std::string body =
      format == "json" ? render_json() : render_csv();
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << body;
}

} // namespace mzm::cli
