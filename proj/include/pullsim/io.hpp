#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace pullsim {

inline constexpr const char* kVersion = "0.1.0";

/// {"command", "parameters", "seed", "version"}; `seed` omitted when null.
nlohmann::json make_metadata(const std::string& command, const nlohmann::json& parameters,
                             const nlohmann::json& seed = nullptr);

/// Shortest round-trip decimal form ("%.17g").
std::string format_double(double v);

/// CSV whose first line is `# ` followed by a one-line JSON metadata object.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const nlohmann::json& metadata,
            const std::vector<std::string>& columns);

  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_;
};

struct CsvTable {
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // FormatError when absent
  std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Flat little-endian IEEE-754 binary64 values, no header.
void write_f64_le(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_f64_le(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace pullsim
