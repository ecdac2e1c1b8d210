#pragma once

// Output plumbing shared by the command-line front end: canonical float
// formatting, CSV tables with a commented config header, JSON documents.

#include <nlohmann/json.hpp>

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace branchlab {

inline constexpr const char* kToolName = "branchlab";
inline constexpr const char* kToolVersion = "0.1.0";

/// %.17g: round-trips every double, independent of the stream locale.
inline std::string format_float(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<double> row) { rows_.push_back(std::move(row)); }
  std::size_t rows() const { return rows_.size(); }

  /// Comment lines (`# ...`) precede the header row.
  std::string render(const std::vector<std::string>& comments) const {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) out += ',';
      out += columns_[i];
    }
    out += '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += format_float(r[i]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// `key=value` lines for a flat JSON object, in key order.
inline std::vector<std::string> config_comments(const nlohmann::json& config) {
  std::vector<std::string> out;
  out.push_back(std::string(kToolName) + " " + kToolVersion);
  for (const auto& [key, value] : config.items()) {
    if (value.is_number_float()) {
      out.push_back(key + "=" + format_float(value.get<double>()));
    } else if (value.is_string()) {
      out.push_back(key + "=" + value.get<std::string>());
    } else {
      out.push_back(key + "=" + value.dump());
    }
  }
  return out;
}

/// Canonical JSON: sorted keys (nlohmann's default object), 2-space indent,
/// shortest round-trip floats.
inline std::string render_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace branchlab
