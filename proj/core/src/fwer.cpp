#include "sefield/fwer.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "sefield/errors.hpp"
#include "sefield/field.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/parallel.hpp"
#include "sefield/special.hpp"

namespace sefield {

FwerThreshold threshold(std::int64_t n, double alpha, FwerVariant variant) {
  if (n < 3) throw DomainError("threshold: n must be >= 3");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("threshold: alpha must lie in (0,1)");
  const double L = std::log(static_cast<double>(n));
  const double sL = std::sqrt(L);
  FwerThreshold t;
  t.n = n;
  t.alpha = alpha;
  t.variant = variant;
  t.q_alpha = gumbel_quantile(alpha, GumbelLaw::g1());
  double shift = std::log(L);
  if (variant == FwerVariant::log4pi) shift += std::log(4.0 * kPi);
  t.u = t.q_alpha / (2.0 * sL) + 2.0 * sL - shift / (4.0 * sL);
  return t;
}

FwerEstimate fwer_from_maxima(const std::vector<double>& maxima, double u) {
  FwerEstimate e;
  e.u = u;
  e.reps = maxima.size();
  for (double m : maxima)
    if (m > u) ++e.rejections;
  if (e.reps > 0) {
    e.rate = static_cast<double>(e.rejections) / static_cast<double>(e.reps);
    e.half_width = 1.96 * std::sqrt(e.rate * (1.0 - e.rate) / static_cast<double>(e.reps));
  }
  return e;
}

FwerEstimate fwer_estimate(std::int64_t n, double r, double alpha, std::uint64_t reps, std::uint64_t seed,
                           unsigned workers, FwerVariant variant) {
  if (reps < 1000) throw DomainError("fwer_estimate: reps must be >= 1000");
  if (!(r >= 0.0 && r < 0.5)) throw DomainError("fwer_estimate: r must lie in [0, 1/2)");
  const auto thr = threshold(n, alpha, variant);
  const auto params = make_field_params(n, r);
  const auto maxima =
      parallel_map(reps, workers, [&](std::uint64_t k) { return sample_max(params, RngStream::replicate(seed, k)); });
  return fwer_from_maxima(maxima, thr.u);
}

std::vector<PairLabel> reject_set(std::int64_t n, const std::vector<PairObservation>& observations, double u) {
  if (n < 2) throw DomainError("reject_set: n must be >= 2");
  const std::uint64_t m = pair_count(n);
  std::vector<double> value(m, 0.0);
  std::vector<char> seen(m, 0);
  for (const auto& o : observations) {
    if (o.i < 1 || o.j <= o.i || o.j > n)
      throw InputError("reject_set: invalid pair (" + std::to_string(o.i) + "," + std::to_string(o.j) + ")");
    const auto at = pair_index(o.i - 1, o.j - 1, n);
    if (seen[at])
      throw InputError("reject_set: duplicate pair (" + std::to_string(o.i) + "," + std::to_string(o.j) + ")");
    seen[at] = 1;
    value[at] = o.value;
  }
  if (observations.size() != m) {
    std::string missing;
    std::size_t listed = 0;
    const std::size_t absent = m - observations.size();
    for (std::int64_t i = 0; i < n && listed < 20; ++i)
      for (std::int64_t j = i + 1; j < n && listed < 20; ++j)
        if (!seen[pair_index(i, j, n)]) {
          missing += (listed ? " (" : "(") + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
          ++listed;
        }
    if (absent > listed) missing += " ... " + std::to_string(absent) + " in total";
    throw InputError("reject_set: missing pairs " + missing);
  }
  std::vector<PairLabel> out;
  std::uint64_t at = 0;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j, ++at)
      if (value[at] > u) out.push_back({i + 1, j + 1});
  return out;
}

std::vector<PairObservation> read_observations_csv(std::istream& in) {
  std::vector<PairObservation> out;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected i,j,value");
    PairObservation o;
    const char* b = line.data();
    const auto r1 = std::from_chars(b, b + c1, o.i);
    const auto r2 = std::from_chars(b + c1 + 1, b + c2, o.j);
    const auto r3 = std::from_chars(b + c2 + 1, b + line.size(), o.value);
    const bool ok = r1.ec == std::errc() && r1.ptr == b + c1 && r2.ec == std::errc() && r2.ptr == b + c2 &&
                    r3.ec == std::errc() && r3.ptr == b + line.size();
    if (!ok) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw InputError("line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
    first = false;
    if (o.i < 1 || o.j <= o.i)
      throw InputError("line " + std::to_string(lineno) + ": need 1 <= i < j");
    out.push_back(o);
  }
  return out;
}

std::vector<PairObservation> read_observations_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_observations_csv(in);
}

}  // namespace sefield
