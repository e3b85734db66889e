#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sefield::cli {

// Rows are buffered and written in one go; numbers use %.17g.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row() {
    rows_.emplace_back();
    return *this;
  }
  CsvTable& add(double v);
  CsvTable& add(long long v);
  CsvTable& add(unsigned long long v);
  CsvTable& add(const std::string& v);

  std::size_t size() const noexcept { return rows_.size(); }
  std::string render() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

// One numeric column from a CSV with a header row; by name or, when empty,
// the last column.
std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column);

}  // namespace sefield::cli
