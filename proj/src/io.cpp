#include "pullsim/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "pullsim/errors.hpp"

namespace pullsim {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

nlohmann::json make_metadata(const std::string& command, const nlohmann::json& parameters,
                             const nlohmann::json& seed) {
  nlohmann::json meta{{"command", command}, {"parameters", parameters}, {"version", kVersion}};
  if (!seed.is_null()) meta["seed"] = seed;
  return meta;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const nlohmann::json& metadata,
                     const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), width_(columns.size()) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  out_ << "# " << metadata.dump() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("write to " + path_.string() + " failed");
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw FormatError("CSV has no column '" + name + "'");
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const std::size_t idx = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const std::string& cell = r.at(idx);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
      throw FormatError("non-numeric value '" + cell + "' in column " + name);
    }
    out.push_back(v);
  }
  return out;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!have_header && table.metadata.empty()) {
        try {
          table.metadata = nlohmann::json::parse(line.substr(1));
        } catch (const nlohmann::json::exception&) {
          throw FormatError(path.string() + ": metadata line is not JSON");
        }
      }
      continue;
    }
    std::vector<std::string> cells = split_line(line);
    if (!have_header) {
      table.columns = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw FormatError(path.string() + ": row width does not match header");
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw FormatError(path.string() + ": no header row");
  return table;
}

void write_f64_le(const std::filesystem::path& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xffu);
    out.write(reinterpret_cast<const char*>(bytes), 8);
  }
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::vector<double> read_f64_le(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.size() % 8 != 0) throw FormatError(path.string() + ": size is not a multiple of 8");
  std::vector<double> out(raw.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[8 * i + b])) << (8 * b);
    }
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << value.dump(2) << '\n';
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace pullsim
