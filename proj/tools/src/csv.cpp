#include "csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sefield/errors.hpp"

namespace sefield::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable& CsvTable::add(double v) {
  rows_.back().push_back(format_double(v));
  return *this;
}

CsvTable& CsvTable::add(long long v) {
  rows_.back().push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::add(unsigned long long v) {
  rows_.back().push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::add(const std::string& v) {
  rows_.back().push_back(v);
  return *this;
}

std::string CsvTable::render() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << render();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  auto cells = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string c;
    while (std::getline(ss, c, ',')) {
      if (!c.empty() && c.back() == '\r') c.pop_back();
      out.push_back(c);
    }
    return out;
  };
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty file");
  const auto header = cells(line);
  std::size_t col = header.size() - 1;
  if (!column.empty()) {
    col = header.size();
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == column) col = k;
    if (col == header.size()) throw InputError(path.string() + ": no column named '" + column + "'");
  }
  std::vector<double> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto c = cells(line);
    if (col >= c.size()) throw InputError(path.string() + ":" + std::to_string(lineno) + ": missing column");
    double v = 0.0;
    const auto& s = c[col];
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": '" + s + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw InputError(path.string() + ": no data rows");
  return out;
}

}  // namespace sefield::cli
