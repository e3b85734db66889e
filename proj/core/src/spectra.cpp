#include "sefield/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sefield/errors.hpp"

namespace sefield {

PairMatrixSpec make_pair_matrix_spec(std::int64_t p, double b) {
  if (p < 4) throw DomainError("pair matrix: p must be >= 4, got " + std::to_string(p));
  if (!(b >= 0.0 && b < 0.5)) throw DomainError("pair matrix: b must lie in [0, 1/2)");
  return PairMatrixSpec{p, b};
}

std::vector<double> build_pair_covariance(const PairMatrixSpec& spec) {
  const auto s = make_pair_matrix_spec(spec.p, spec.b);
  const std::size_t d = s.dimension();
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  pairs.reserve(d);
  for (std::int64_t i = 0; i < s.p; ++i)
    for (std::int64_t j = i + 1; j < s.p; ++j) pairs.emplace_back(i, j);
  std::vector<double> a(d * d, 0.0);
  for (std::size_t e = 0; e < d; ++e)
    for (std::size_t f = 0; f < d; ++f) {
      const auto [i, j] = pairs[e];
      const auto [k, l] = pairs[f];
      const int overlap = (i == k) + (i == l) + (j == k) + (j == l);
      a[e * d + f] = overlap == 2 ? 1.0 : overlap == 1 ? s.b : 0.0;
    }
  return a;
}

std::vector<Eigenvalue> spectrum_closed_form(const PairMatrixSpec& spec) {
  const auto s = make_pair_matrix_spec(spec.p, spec.b);
  const double p = static_cast<double>(s.p);
  const std::size_t d = s.dimension();
  const auto up = static_cast<std::size_t>(s.p);
  std::vector<Eigenvalue> raw = {{1.0 + 2.0 * s.b * (p - 2.0), 1},
                                 {1.0 + s.b * (p - 4.0), up - 1},
                                 {1.0 - 2.0 * s.b, d - up}};
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.value > y.value; });
  std::vector<Eigenvalue> out;
  for (const auto& e : raw) {
    if (e.multiplicity == 0) continue;
    if (!out.empty() && out.back().value == e.value)
      out.back().multiplicity += e.multiplicity;
    else
      out.push_back(e);
  }
  return out;
}

SymmetricEigenResult jacobi_eigenvalues(std::vector<double> a, std::size_t d, double off_tol,
                                        int max_sweeps) {
  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) s += a[i * d + j] * a[i * d + j];
    return std::sqrt(s);
  };
  SymmetricEigenResult res;
  res.off_norm = off_norm();
  while (res.off_norm >= off_tol) {
    if (res.sweeps >= max_sweeps) {
      std::ostringstream os;
      os << "jacobi: no convergence after " << max_sweeps << " sweeps, off-diagonal norm "
         << res.off_norm;
      throw NumericError(os.str());
    }
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p * d + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a[k * d + p];
          const double akq = a[k * d + q];
          a[k * d + p] = c * akp - s * akq;
          a[k * d + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a[p * d + k];
          const double aqk = a[q * d + k];
          a[p * d + k] = c * apk - s * aqk;
          a[q * d + k] = s * apk + c * aqk;
        }
      }
    ++res.sweeps;
    res.off_norm = off_norm();
  }
  res.values.resize(d);
  for (std::size_t i = 0; i < d; ++i) res.values[i] = a[i * d + i];
  std::sort(res.values.begin(), res.values.end());
  return res;
}

SpectrumCheck verify_spectrum(const PairMatrixSpec& spec, double tol) {
  const auto s = make_pair_matrix_spec(spec.p, spec.b);
  if (s.p > kSpectrumVertexCap)
    throw SizeError("verify_spectrum: p=" + std::to_string(s.p) + " exceeds cap " +
                    std::to_string(kSpectrumVertexCap));
  if (!(tol > 0.0)) throw DomainError("verify_spectrum: tol must be positive");
  const std::size_t d = s.dimension();
  const auto numeric = jacobi_eigenvalues(build_pair_covariance(s), d, tol * static_cast<double>(d));

  const auto closed = spectrum_closed_form(s);
  std::vector<double> expected;
  for (const auto& e : closed) expected.insert(expected.end(), e.multiplicity, e.value);
  std::sort(expected.begin(), expected.end());

  SpectrumCheck out;
  for (std::size_t i = 0; i < d; ++i)
    out.max_deviation = std::max(out.max_deviation, std::fabs(numeric.values[i] - expected[i]));
  out.match = out.max_deviation <= tol;

  if (s.b >= 0.05) {
    // Multiplicities by clustering the sorted numeric values.
    std::vector<Eigenvalue> clusters;
    for (double v : numeric.values) {
      if (!clusters.empty() && v - clusters.back().value <= kClusterGap)
        ++clusters.back().multiplicity;
      else
        clusters.push_back({v, 1});
    }
    out.clusters = clusters.size();
    std::reverse(clusters.begin(), clusters.end());
    bool same = clusters.size() == closed.size();
    for (std::size_t i = 0; same && i < closed.size(); ++i)
      same = clusters[i].multiplicity == closed[i].multiplicity;
    out.match = out.match && same;
  } else {
    out.clusters = closed.size();
  }
  return out;
}

}  // namespace sefield
