#include "sefield/dataset_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "sefield/errors.hpp"

namespace sefield {

namespace {

template <class T>
void put_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  std::uint64_t bits = 0;
  if constexpr (sizeof(T) == 8)
    bits = std::bit_cast<std::uint64_t>(value);
  else
    bits = static_cast<std::uint64_t>(std::bit_cast<std::uint32_t>(value));
  for (std::size_t b = 0; b < sizeof(T); ++b) buf[b] = static_cast<unsigned char>(bits >> (8 * b));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& in, const char* what) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
    throw InputError(std::string("matrix file truncated while reading ") + what);
  std::uint64_t bits = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
  if constexpr (sizeof(T) == 8)
    return std::bit_cast<T>(bits);
  else
    return std::bit_cast<T>(static_cast<std::uint32_t>(bits));
}

double parse_double(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("line " + std::to_string(line) + ": cannot parse '" + std::string(s) + "' as a number");
  return v;
}

}  // namespace

void write_matrix(std::ostream& out, const Dataset& data) {
  if (data.values.size() != static_cast<std::size_t>(data.n * data.p))
    throw InputError("write_matrix: value count does not match n x p");
  out.write(kMatrixMagic, 4);
  put_le<std::uint32_t>(out, kMatrixVersion);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(data.n));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(data.p));
  for (double v : data.values) put_le<double>(out, v);
  if (!out) throw IoError("write_matrix: stream write failed");
}

Dataset read_matrix(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMatrixMagic, 4) != 0) throw InputError("not a SEFM matrix file");
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kMatrixVersion) throw InputError("unsupported matrix version " + std::to_string(version));
  const auto n = get_le<std::uint64_t>(in, "n");
  const auto p = get_le<std::uint64_t>(in, "p");
  if (n == 0 || p == 0 || n > (1ull << 40) / p) throw InputError("matrix header has implausible shape");
  Dataset d;
  d.n = static_cast<std::int64_t>(n);
  d.p = static_cast<std::int64_t>(p);
  d.values.resize(n * p);
  for (auto& v : d.values) v = get_le<double>(in, "values");
  return d;
}

void write_matrix_file(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_matrix(out, data);
}

Dataset read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_matrix(in);
}

Dataset read_matrix_csv(std::istream& in) {
  Dataset d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s(line);
    if (s.find_first_not_of(" \t\r") == std::string_view::npos || s.front() == '#') continue;
    std::int64_t width = 0;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      d.values.push_back(parse_double(s.substr(start, comma - start), lineno));
      ++width;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (d.n == 0)
      d.p = width;
    else if (width != d.p)
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(d.p) + " columns, found " +
                       std::to_string(width));
    ++d.n;
  }
  if (d.n == 0) throw InputError("matrix CSV has no data rows");
  return d;
}

Dataset read_matrix_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_matrix_csv(in);
}

}  // namespace sefield
