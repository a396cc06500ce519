#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hadamard::io {

// Shortest round-trip text is not used: every double is printed with 17
// significant digits and '.' as separator, independent of the locale.
std::string format_double(double v);

class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  class Row {
   public:
    Row& add(double v);
    Row& add(std::int64_t v);
    Row& add(std::uint64_t v);
    Row& add(int v) { return add(static_cast<std::int64_t>(v)); }
    Row& add(bool v);
    Row& add(const std::string& v);
    Row& add(const char* v) { return add(std::string(v)); }

   private:
    friend class CsvTable;
    std::vector<std::string> cells_;
  };

  Row& row();

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }
  std::string str() const;
  // Throws IoError.
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

}  // namespace hadamard::io
