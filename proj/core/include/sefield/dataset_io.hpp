#pragma once

#include <filesystem>
#include <iosfwd>

#include "sefield/apps.hpp"

namespace sefield {

// Binary matrix layout: magic "SEFM", uint32 version (1), uint64 n,
// uint64 p, then n*p little-endian doubles in row-major order.
inline constexpr char kMatrixMagic[4] = {'S', 'E', 'F', 'M'};
inline constexpr std::uint32_t kMatrixVersion = 1;

void write_matrix(std::ostream& out, const Dataset& data);
Dataset read_matrix(std::istream& in);
void write_matrix_file(const std::filesystem::path& path, const Dataset& data);
Dataset read_matrix_file(const std::filesystem::path& path);

// Comma separated rows of equal width; blank lines and lines starting with
// '#' are skipped.
Dataset read_matrix_csv(std::istream& in);
Dataset read_matrix_csv_file(const std::filesystem::path& path);

}  // namespace sefield
