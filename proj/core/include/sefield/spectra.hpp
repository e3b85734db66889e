#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sefield {

// Covariance of pair indicators on p vertices: 1 on the diagonal, b for
// pairs sharing one vertex, 0 for disjoint pairs.
struct PairMatrixSpec {
  std::int64_t p = 4;
  double b = 0.0;

  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1) / 2;
  }
};

PairMatrixSpec make_pair_matrix_spec(std::int64_t p, double b);

// Row-major d x d matrix, pairs in lexicographic order.
std::vector<double> build_pair_covariance(const PairMatrixSpec& spec);

struct Eigenvalue {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

// 1 + 2b(p-2) once, 1 + b(p-4) with multiplicity p-1, 1 - 2b with
// multiplicity d - p; coinciding values are merged, sorted descending.
std::vector<Eigenvalue> spectrum_closed_form(const PairMatrixSpec& spec);

struct SymmetricEigenResult {
  std::vector<double> values;  // ascending
  int sweeps = 0;
  double off_norm = 0.0;
};

// Cyclic Jacobi on a dense symmetric matrix; stops once the off-diagonal
// Frobenius norm drops below off_tol.
SymmetricEigenResult jacobi_eigenvalues(std::vector<double> a, std::size_t d, double off_tol,
                                        int max_sweeps = 100);

struct SpectrumCheck {
  bool match = false;
  double max_deviation = 0.0;
  std::size_t clusters = 0;
};

inline constexpr std::int64_t kSpectrumVertexCap = 16;
inline constexpr double kClusterGap = 1e-6;

SpectrumCheck verify_spectrum(const PairMatrixSpec& spec, double tol);

}  // namespace sefield
