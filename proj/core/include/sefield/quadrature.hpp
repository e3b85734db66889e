#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <queue>
#include <span>
#include <utility>
#include <vector>

namespace sefield {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

namespace detail {

inline constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kKronrodWeights[7];
  double rg = fc * kGaussWeights[3];
  for (int j = 0; j < 3; ++j) {
    const int k = 2 * j + 1;
    const double s = f(c - h * kGkNodes[k]) + f(c + h * kGkNodes[k]);
    rg += kGaussWeights[j] * s;
    rk += kKronrodWeights[k] * s;
  }
  for (int j = 0; j < 4; ++j) {
    const int k = 2 * j;
    rk += kKronrodWeights[k] * (f(c - h * kGkNodes[k]) + f(c + h * kGkNodes[k]));
  }
  return Segment{a, b, rk * h, std::fabs((rk - rg) * h)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature over consecutive
// intervals [breaks[i], breaks[i+1]].
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breaks, double rel_tol, double abs_tol,
                           std::size_t max_segments = 2000) {
  QuadratureResult out;
  std::priority_queue<detail::Segment> heap;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    heap.push(detail::gk15(f, breaks[i], breaks[i + 1]));
    out.evaluations += 15;
  }
  auto totals = [&heap]() {
    auto copy = heap;
    double v = 0.0, e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };
  auto [value, error] = totals();
  while (!heap.empty() && error > std::max(abs_tol, rel_tol * std::fabs(value)) &&
         heap.size() < max_segments) {
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  const auto [v, e] = totals();
  out.value = v;
  out.error = e;
  out.converged = e <= std::max(abs_tol, rel_tol * std::fabs(v));
  return out;
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol, double abs_tol,
                           std::size_t max_segments = 2000) {
  const double breaks[2] = {a, b};
  return integrate(f, std::span<const double>(breaks, 2), rel_tol, abs_tol, max_segments);
}

// Sorted breakpoints: the endpoints plus any interior points.
inline std::vector<double> breakpoints(double a, double b, std::initializer_list<double> interior) {
  std::vector<double> pts{a, b};
  for (double p : interior)
    if (p > a && p < b) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace sefield
