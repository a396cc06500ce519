#include "hadamard/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "hadamard/errors.hpp"

namespace hadamard::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvTable::Row& CsvTable::Row::add(double v) {
  cells_.push_back(format_double(v));
  return *this;
}

CsvTable::Row& CsvTable::Row::add(std::int64_t v) {
  cells_.push_back(std::to_string(v));
  return *this;
}

CsvTable::Row& CsvTable::Row::add(std::uint64_t v) {
  cells_.push_back(std::to_string(v));
  return *this;
}

CsvTable::Row& CsvTable::Row::add(bool v) {
  cells_.push_back(v ? "true" : "false");
  return *this;
}

CsvTable::Row& CsvTable::Row::add(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) {
    cells_.push_back(v);
    return *this;
  }
  std::string quoted = "\"";
  for (char c : v) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  cells_.push_back(quoted + "\"");
  return *this;
}

CsvTable::Row& CsvTable::row() {
  rows_.emplace_back();
  return rows_.back();
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r.cells_);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const std::string text = str();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace hadamard::io
