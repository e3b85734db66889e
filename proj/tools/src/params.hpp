#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sefield::cli {

// Subcommand parameters as raw strings, keyed by long option name.
// Typed getters validate and name the offending field on failure.
class Params {
 public:
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const;
  const std::string& str(const std::string& key) const;
  double real(const std::string& key) const;
  double real_in(const std::string& key, double lo, double hi) const;
  std::int64_t integer(const std::string& key, std::int64_t min) const;
  std::uint64_t u64(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  // "4..12", "4..12..2" or "4,5,9"
  std::vector<std::int64_t> integers(const std::string& key, std::int64_t min) const;
  std::uint64_t seed() const;  // mandatory for stochastic commands
  unsigned workers() const;
};

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

}  // namespace sefield::cli
