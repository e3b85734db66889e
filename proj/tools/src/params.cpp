#include "params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "sefield/errors.hpp"

namespace sefield::cli {

namespace {

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw ConfigError(key + ": " + why + " (got '" + value + "')");
}

template <class T>
T parse_number(const std::string& key, const std::string& s) {
  T v{};
  const auto t = trim(s);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad(key, s, "not a valid number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at - start)));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

}  // namespace

bool Params::has(const std::string& key) const {
  const auto it = values.find(key);
  return it != values.end() && !it->second.empty();
}

const std::string& Params::str(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end() || it->second.empty()) throw ConfigError(key + ": required");
  return it->second;
}

double Params::real(const std::string& key) const {
  const double v = parse_number<double>(key, str(key));
  if (!std::isfinite(v)) bad(key, str(key), "must be finite");
  return v;
}

double Params::real_in(const std::string& key, double lo, double hi) const {
  const double v = real(key);
  if (v < lo || v > hi) bad(key, str(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

std::int64_t Params::integer(const std::string& key, std::int64_t min) const {
  const auto& s = str(key);
  std::int64_t v = 0;
  if (s.find_first_of(".eE") != std::string::npos) {
    const double d = parse_number<double>(key, s);
    if (d != std::floor(d) || std::abs(d) > 9e15) bad(key, s, "must be an integer");
    v = static_cast<std::int64_t>(d);
  } else {
    v = parse_number<std::int64_t>(key, s);
  }
  if (v < min) bad(key, s, "must be >= " + std::to_string(min));
  return v;
}

std::uint64_t Params::u64(const std::string& key) const {
  const auto& s = str(key);
  const auto t = trim(s);
  std::uint64_t v = 0;
  const bool hex = t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X');
  const char* b = t.data() + (hex ? 2 : 0);
  const auto [ptr, ec] = std::from_chars(b, t.data() + t.size(), v, hex ? 16 : 10);
  if (ec != std::errc() || ptr != t.data() + t.size() || b == t.data() + t.size())
    bad(key, s, "not a valid unsigned 64-bit integer");
  return v;
}

std::vector<double> Params::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(str(key), ',')) out.push_back(parse_number<double>(key, part));
  return out;
}

std::vector<std::int64_t> Params::integers(const std::string& key, std::int64_t min) const {
  const auto& s = str(key);
  std::vector<std::int64_t> out;
  if (s.find("..") != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
      const auto at = s.find("..", start);
      parts.push_back(trim(s.substr(start, at - start)));
      if (at == std::string::npos) break;
      start = at + 2;
    }
    if (parts.size() < 2 || parts.size() > 3) bad(key, s, "range must be a..b or a..b..step");
    const auto a = parse_number<std::int64_t>(key, parts[0]);
    const auto b = parse_number<std::int64_t>(key, parts[1]);
    const auto step = parts.size() == 3 ? parse_number<std::int64_t>(key, parts[2]) : 1;
    if (step < 1 || b < a) bad(key, s, "empty range");
    for (std::int64_t v = a; v <= b; v += step) out.push_back(v);
  } else {
    for (const auto& part : split(s, ',')) {
      if (part.find_first_of(".eE") != std::string::npos) {
        const double d = parse_number<double>(key, part);
        if (d != std::floor(d)) bad(key, s, "entries must be integers");
        out.push_back(static_cast<std::int64_t>(d));
      } else {
        out.push_back(parse_number<std::int64_t>(key, part));
      }
    }
  }
  for (auto v : out)
    if (v < min) bad(key, s, "entries must be >= " + std::to_string(min));
  return out;
}

std::uint64_t Params::seed() const {
  if (!has("seed")) throw ConfigError("seed: required (no entropy default)");
  return u64("seed");
}

unsigned Params::workers() const {
  if (!has("workers")) return 1;
  return static_cast<unsigned>(integer("workers", 1));
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    auto key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace sefield::cli
