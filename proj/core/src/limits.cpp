#include "sefield/limits.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <string>
#include <utility>

#include "sefield/errors.hpp"
#include "sefield/special.hpp"

namespace sefield {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExactIndexLimit = 9007199254740992.0;  // 2^53
constexpr double kMaxLogIndex = 700.0;
constexpr std::uint64_t kPilotSeed = 0x70696C6F74ull;
constexpr double kLeafPairs = 16.0;
constexpr std::size_t kGammaPrefix = 64;

double log_k1_term(double k) { return -(k / 4.0) * std::log(k) + 2.0 * k; }

// Smallest K >= 1 with log_excess(K') <= 0 for all K' >= K, located by a
// scan in log K followed by bisection inside the last violating cell.
template <class F>
double smallest_level(F log_excess) {
  constexpr double step = 0.25;
  double last_bad = -1.0;
  for (double t = 0.0; t <= kMaxLogIndex; t += step)
    if (log_excess(std::exp(t)) > 0.0) last_bad = t;
  if (last_bad < 0.0) return 1.0;
  if (last_bad + step > kMaxLogIndex)
    throw NumericError("truncation level exceeds the representable index range");
  double lo = std::exp(last_bad);
  double hi = std::exp(last_bad + step);
  if (hi < kExactIndexLimit) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
    while (hi - lo > 1.0) {
      const double mid = std::floor(lo + (hi - lo) / 2.0);
      if (log_excess(mid) <= 0.0)
        hi = mid;
      else
        lo = mid;
    }
    return std::max(hi, 1.0);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (log_excess(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double pilot_T(double epsilon, double c, std::size_t reps) {
  RngStream s = RngStream(kPilotSeed).child(0);
  std::vector<double> y(reps);
  for (auto& v : y) {
    const double g1 = s.exponential();
    const double g2 = g1 + s.exponential();
    v = -(std::log(g1) + std::log(g2)) / kSqrt2;
    if (c > 0.0) v += c * s.normal();
  }
  const auto k = static_cast<std::size_t>(std::floor(epsilon / 20.0 * static_cast<double>(reps)));
  std::nth_element(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k), y.end());
  return y[k];
}

// Conditional-max bookkeeping: w = log(-log Phi(z)).
double z_from_w(double w) {
  if (w < -30.0) {
    const double log_q = w < -700.0 ? w : std::log(-std::expm1(-std::exp(w)));
    return normal_upper_quantile_log(log_q);
  }
  return normal_quantile_log(-std::exp(w));
}

double log_neg_log_uniform(RngStream& s) { return std::log(-std::log(s.uniform())); }

double log_pairs_triangle(double a, double b) {
  const double s = b - a + 1.0;
  return std::log(s) + std::log(s - 1.0) - std::log(2.0);
}

double pairs_triangle(double a, double b) {
  const double s = b - a + 1.0;
  return s * (s - 1.0) / 2.0;
}

double split_point(double a, double b) {
  if (!(b - a >= 1.0)) throw NumericError("perturbed sup: index range no longer splittable");
  double m = b > 2.0 * a ? std::floor(std::sqrt(a) * std::sqrt(b)) : std::floor(a + (b - a) / 2.0);
  return std::clamp(m, a, b - 1.0);
}

class LazyGammaProcess {
 public:
  LazyGammaProcess(double K, RngStream stream) : stream_(stream) {
    const std::size_t P = K < static_cast<double>(kGammaPrefix) ? static_cast<std::size_t>(K)
                                                                : kGammaPrefix;
    prefix_.resize(P);
    double g = 0.0;
    for (auto& v : prefix_) v = (g += stream_.exponential());
    if (K > static_cast<double>(P)) {
      known_.emplace(static_cast<double>(P), prefix_.back());
      known_.emplace(K, prefix_.back() + sample_gamma(K - static_cast<double>(P), stream_));
    }
  }

  double eta(double k) { return -std::log(gamma(k)); }

 private:
  double gamma(double k) {
    if (k <= static_cast<double>(prefix_.size())) return prefix_[static_cast<std::size_t>(k) - 1];
    auto hi = known_.lower_bound(k);
    if (hi->first == k) return hi->second;
    const auto lo = std::prev(hi);
    const double ga = sample_gamma(k - lo->first, stream_);
    const double gb = sample_gamma(hi->first - k, stream_);
    const double v = lo->second + (hi->second - lo->second) * (ga / (ga + gb));
    known_.emplace_hint(hi, k, v);
    return v;
  }

  RngStream stream_;
  std::vector<double> prefix_;
  std::map<double, double> known_;
};

struct Block {
  double r0, r1, c0, c1;
  bool tri;
  double log_count;
  double count;
  double w;
  double bound;
};

struct ByBound {
  bool operator()(const Block& a, const Block& b) const { return a.bound < b.bound; }
};

class PerturbedSup {
 public:
  PerturbedSup(double c, double K, RngStream& stream)
      : c_(c), K_(K), base_(stream.split()), eta_(K, base_.child(1)), z_(base_.child(2)) {}

  double run() {
    Block root{1.0, K_, 0.0, 0.0, true, log_pairs_triangle(1.0, K_), pairs_triangle(1.0, K_), 0.0,
               0.0};
    root.w = log_neg_log_uniform(z_) - root.log_count;
    set_bound(root);
    std::priority_queue<Block, std::vector<Block>, ByBound> heap;
    heap.push(root);
    double best = -kInf;
    while (!heap.empty()) {
      Block b = heap.top();
      if (b.bound <= best) break;
      heap.pop();
      if (b.count <= kLeafPairs) {
        best = std::max(best, evaluate_leaf(b));
        continue;
      }
      for (Block& child : split(b)) {
        set_bound(child);
        if (child.bound > best) heap.push(child);
      }
    }
    return best;
  }

 private:
  void set_bound(Block& b) {
    const double top = b.tri ? eta_.eta(b.r0) + eta_.eta(b.r0 + 1.0) : eta_.eta(b.r0) + eta_.eta(b.c0);
    b.bound = top / kSqrt2 + c_ * z_from_w(b.w);
  }

  static Block triangle(double a, double b) {
    return Block{a, b, 0.0, 0.0, true, log_pairs_triangle(a, b), pairs_triangle(a, b), 0.0, 0.0};
  }

  static Block rectangle(double r0, double r1, double c0, double c1) {
    const double nr = r1 - r0 + 1.0;
    const double nc = c1 - c0 + 1.0;
    return Block{r0, r1, c0, c1, false, std::log(nr) + std::log(nc), nr * nc, 0.0, 0.0};
  }

  std::vector<Block> split(const Block& b) {
    std::vector<Block> kids;
    if (b.tri) {
      const double m = split_point(b.r0, b.r1);
      if (m - b.r0 >= 1.0) kids.push_back(triangle(b.r0, m));
      if (b.r1 - m >= 2.0) kids.push_back(triangle(m + 1.0, b.r1));
      kids.push_back(rectangle(b.r0, m, m + 1.0, b.r1));
    } else if (b.r1 - b.r0 >= b.c1 - b.c0) {
      const double m = split_point(b.r0, b.r1);
      kids.push_back(rectangle(b.r0, m, b.c0, b.c1));
      kids.push_back(rectangle(m + 1.0, b.r1, b.c0, b.c1));
    } else {
      const double m = split_point(b.c0, b.c1);
      kids.push_back(rectangle(b.r0, b.r1, b.c0, m));
      kids.push_back(rectangle(b.r0, b.r1, m + 1.0, b.c1));
    }
    // The parent's maximum sits in child k with probability count_k / count.
    double lmax = -kInf;
    for (const auto& k : kids) lmax = std::max(lmax, k.log_count);
    double total = 0.0;
    std::vector<double> weight(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i) total += (weight[i] = std::exp(kids[i].log_count - lmax));
    const double pick = z_.uniform() * total;
    std::size_t argmax = kids.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      acc += weight[i];
      if (pick < acc) {
        argmax = i;
        break;
      }
    }
    for (std::size_t i = 0; i < kids.size(); ++i)
      kids[i].w = i == argmax ? b.w : log_add_exp(b.w, log_neg_log_uniform(z_) - kids[i].log_count);
    return kids;
  }

  double evaluate_leaf(const Block& b) {
    const double hi_index = b.tri ? b.r1 : b.c1;
    if (hi_index >= kExactIndexLimit)
      throw NumericError("perturbed sup: leaf indices beyond exact integer range");
    std::vector<std::pair<double, double>> pairs;
    if (b.tri) {
      for (double i = b.r0; i <= b.r1; i += 1.0)
        for (double j = i + 1.0; j <= b.r1; j += 1.0) pairs.emplace_back(i, j);
    } else {
      for (double i = b.r0; i <= b.r1; i += 1.0)
        for (double j = b.c0; j <= b.c1; j += 1.0) pairs.emplace_back(i, j);
    }
    const auto m = pairs.size();
    auto argmax = static_cast<std::size_t>(z_.uniform() * static_cast<double>(m));
    if (argmax >= m) argmax = m - 1;
    double best = -kInf;
    for (std::size_t k = 0; k < m; ++k) {
      const double w = k == argmax ? b.w : log_add_exp(b.w, log_neg_log_uniform(z_));
      const double v = (eta_.eta(pairs[k].first) + eta_.eta(pairs[k].second)) / kSqrt2 + c_ * z_from_w(w);
      best = std::max(best, v);
    }
    return best;
  }

  double c_;
  double K_;
  RngStream base_;
  LazyGammaProcess eta_;
  RngStream z_;
};

std::mutex& budget_mutex() {
  static std::mutex m;
  return m;
}

const TruncationBudget& cached_budget(double epsilon, double c) {
  static std::map<std::pair<double, double>, TruncationBudget> cache;
  std::lock_guard<std::mutex> lock(budget_mutex());
  const auto key = std::make_pair(epsilon, c);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, truncation_budget(epsilon, c)).first;
  return it->second;
}

}  // namespace

PppPoints sample_ppp(std::size_t K, RngStream& stream) {
  if (K < 1) throw DomainError("sample_ppp: K must be >= 1");
  PppPoints p;
  p.points.resize(K);
  double g = 0.0;
  for (auto& v : p.points) {
    g += stream.exponential();
    v = -std::log(g);
  }
  return p;
}

double kl_divergence(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw DomainError("kl_divergence: probabilities must lie in [0,1]");
  if (q == 0.0 || q == 1.0) return p == q ? 0.0 : kInf;
  auto term = [](double a, double b) { return a == 0.0 ? 0.0 : a * std::log(a / b); };
  return std::max(0.0, term(p, q) + term(1.0 - p, 1.0 - q));
}

double k1_tail(double K, double tail_tol) {
  if (!(K >= 1.0)) throw DomainError("k1_tail: K must be >= 1");
  double sum = 0.0;
  for (double k = std::ceil(K);; k += 1.0) {
    sum += std::exp(log_k1_term(k));
    const double next = log_k1_term(k + 1.0);
    // The log term is concave, so its slope at k+1 bounds every later ratio.
    const double log_ratio = 2.0 - (std::log(k + 1.0) + 1.0) / 4.0;
    if (log_ratio < 0.0) {
      const double rest = std::exp(next) / -std::expm1(log_ratio);
      if (rest <= tail_tol || rest <= 1e-17 * sum) return sum + rest;
    }
  }
}

double log_k2_tail_bound(double K, double c) {
  if (!(c > 0.0)) throw DomainError("log_k2_tail_bound: c must be positive");
  const double a = K + 1.0;
  const double la = std::log(a);
  const double s = 4.0 * c;
  const double log_term = -la * la / (2.0 * s * s);
  const double log_integral =
      std::log(s) + 0.5 * std::log(2.0 * kPi) + 0.5 * s * s + normal_log_sf((la - s * s) / s);
  return log_add_exp(log_term, log_integral);
}

TruncationBudget truncation_budget(double epsilon, double c, std::size_t pilot_reps) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("truncation_budget: epsilon must lie in (0,1)");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("truncation_budget: c must be >= 0");
  if (pilot_reps < 1000) throw ConfigError("truncation_budget: pilot_reps must be >= 1000");

  TruncationBudget b;
  b.epsilon = epsilon;
  b.c = c;
  b.pilot_reps = pilot_reps;
  auto& k = b.components;

  const double t1 = epsilon / 10.0;
  k.K1 = smallest_level([&](double K) { return std::log(k1_tail(std::ceil(K), 1e-3 * t1)) - std::log(t1); });
  if (c > 0.0) {
    const double log_t2 = 0.5 * std::log(epsilon / 5.0);
    const double log_t3 = std::log(epsilon / 5.0);
    k.K2 = smallest_level([&](double K) { return log_k2_tail_bound(K, c) - log_t2; });
    k.K3 = smallest_level([&](double K) { return std::log(K) + log_k2_tail_bound(K, c) - log_t3; });
  }
  k.v_eps = -std::log(-std::log1p(-epsilon / 10.0)) / kSqrt2;
  k.T_eps = pilot_T(epsilon, c, pilot_reps);
  k.log_floor_T = -k.T_eps * (kSqrt2 + 1.0);
  k.log_floor_v = 4.0 * (kSqrt2 + 1.0) * (k.v_eps - k.T_eps / 2.0);

  const double lf = std::max(k.log_floor_T, k.log_floor_v);
  if (lf > kMaxLogIndex) throw NumericError("truncation_budget: floor terms exceed the representable index range");
  const double floor_K = std::exp(lf) < kExactIndexLimit ? std::ceil(std::exp(lf)) : std::exp(lf);
  b.K_required = std::max({k.K1, k.K2, k.K3, floor_K, 2.0});
  b.log_K_required = std::log(b.K_required);
  return b;
}

double perturbed_pair_sup(std::span<const double> eta, double c, RngStream& z_stream) {
  if (eta.size() < 2) throw DomainError("perturbed_pair_sup: need at least two points");
  double best = -kInf;
  for (std::size_t i = 0; i < eta.size(); ++i)
    for (std::size_t j = i + 1; j < eta.size(); ++j) {
      double v = (eta[i] + eta[j]) / kSqrt2;
      if (c != 0.0) v += c * z_stream.normal();
      best = std::max(best, v);
    }
  return best;
}

double sample_perturbed_sup(double c, double K, RngStream& stream) {
  if (!(c >= 0.0)) throw DomainError("sample_perturbed_sup: c must be >= 0");
  if (!(K >= 2.0) || !std::isfinite(K)) throw DomainError("sample_perturbed_sup: K must be >= 2");
  if (std::log(K) > kMaxLogIndex) throw NumericError("sample_perturbed_sup: K beyond representable range");
  K = std::floor(K);
  return PerturbedSup(c, K, stream).run();
}

double critical_drift(double lambda, CriticalDrift drift) noexcept {
  return drift == CriticalDrift::sqrt2_lambda ? kSqrt2 * lambda : lambda;
}

CriticalLimitSampler::CriticalLimitSampler(double lambda, double epsilon, std::size_t pilot_reps,
                                           CriticalDrift drift) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("critical limit: lambda must be >= 0");
  lambda_ = lambda;
  drift_ = drift;
  budget_ = truncation_budget(epsilon, std::sqrt(2.0 * lambda), pilot_reps);
  K_ = budget_->K_required;
}

CriticalLimitSampler CriticalLimitSampler::with_truncation(double lambda, double K, CriticalDrift drift) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("critical limit: lambda must be >= 0");
  if (!(K >= 2.0)) throw DomainError("critical limit: K must be >= 2");
  CriticalLimitSampler s;
  s.lambda_ = lambda;
  s.K_ = K;
  s.drift_ = drift;
  return s;
}

double CriticalLimitSampler::operator()(RngStream& stream) const {
  if (lambda_ == 0.0) {
    const double g1 = stream.exponential();
    const double g2 = g1 + stream.exponential();
    return -(std::log(g1) + std::log(g2)) / kSqrt2;
  }
  return sample_perturbed_sup(std::sqrt(2.0 * lambda_), K_, stream) - critical_drift(lambda_, drift_);
}

double sample_limit_critical(double lambda, double epsilon, RngStream& stream, CriticalDrift drift) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("critical limit: lambda must be >= 0");
  if (lambda == 0.0) return CriticalLimitSampler::with_truncation(0.0, 2.0)(stream);
  const auto& b = cached_budget(epsilon, std::sqrt(2.0 * lambda));
  return CriticalLimitSampler::with_truncation(lambda, b.K_required, drift)(stream);
}

QuantileEstimate empirical_quantile(std::vector<double> sample, double alpha) {
  if (sample.empty()) throw DomainError("empirical_quantile: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("empirical_quantile: alpha must lie in (0,1)");
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  const double target = (1.0 - alpha) * m;
  const double spread = kQuantileConfidenceZ * std::sqrt(m * alpha * (1.0 - alpha));
  auto at_rank = [&](double rank) {
    const double idx = std::clamp(std::ceil(rank) - 1.0, 0.0, m - 1.0);
    return sample[static_cast<std::size_t>(idx)];
  };
  QuantileEstimate q;
  q.estimate = at_rank(target);
  q.half_width = 0.5 * (at_rank(target + spread) - at_rank(target - spread));
  q.reps = sample.size();
  return q;
}

QuantileEstimate limit_quantile(const std::function<double(RngStream&)>& sampler, double alpha,
                                std::size_t reps, RngStream& stream) {
  if (reps < 1000) throw DomainError("limit_quantile: reps must be >= 1000");
  std::vector<double> draws(reps);
  for (auto& v : draws) v = sampler(stream);
  return empirical_quantile(std::move(draws), alpha);
}

QuantileEstimate limit_quantile(const LimitLawSpec& law, double alpha, double epsilon,
                                std::size_t reps, RngStream& stream) {
  if (const auto* g = std::get_if<GumbelLaw>(&law)) {
    const GumbelLaw gl = *g;
    return limit_quantile([gl](RngStream& s) { return sample_gumbel(gl, s); }, alpha, reps, stream);
  }
  const auto& crit = std::get<CriticalLaw>(law);
  const double lambda = crit.lambda;
  if (lambda == 0.0)
    return limit_quantile(CriticalLimitSampler::with_truncation(0.0, 2.0), alpha, reps, stream);
  const CriticalLimitSampler sampler(lambda, epsilon, kDefaultPilotReps, crit.drift);
  return limit_quantile(sampler, alpha, reps, stream);
}

double sample_gamma(double shape, RngStream& stream) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("sample_gamma: shape must be positive");
  if (shape <= 16.0 && shape == std::floor(shape)) {
    double s = 0.0;
    for (int i = 0; i < static_cast<int>(shape); ++i) s += stream.exponential();
    return s;
  }
  if (shape < 1.0) return sample_gamma(shape + 1.0, stream) * std::pow(stream.uniform(), 1.0 / shape);
  if (shape > 1e7) {
    // Wilson-Hilferty; relative error far below the sampling spread here.
    const double z = stream.normal();
    const double v = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * std::sqrt(shape));
    return shape * v * v * v;
  }
  // Marsaglia-Tsang.
  const double d = shape - 1.0 / 3.0;
  const double cc = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = stream.normal();
    double v = 1.0 + cc * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = stream.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace sefield
