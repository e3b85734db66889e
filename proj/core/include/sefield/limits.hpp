#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "sefield/normalizers.hpp"
#include "sefield/rng.hpp"

namespace sefield {

// First K points of the Poisson process with intensity exp(-x) dx, as
// eta_i = -log(E_1 + ... + E_i), strictly decreasing.
struct PppPoints {
  std::vector<double> points;

  std::size_t K() const noexcept { return points.size(); }
};

PppPoints sample_ppp(std::size_t K, RngStream& stream);

// Bernoulli Kullback-Leibler divergence; +infinity when q is 0 or 1 and p differs.
double kl_divergence(double p, double q);

inline constexpr std::size_t kDefaultPilotReps = 100000;

struct TruncationComponents {
  double K1 = 1.0;
  double K2 = 1.0;
  double K3 = 1.0;
  double T_eps = 0.0;
  double v_eps = 0.0;
  double log_floor_T = 0.0;  // log of exp(-T (sqrt2 + 1))
  double log_floor_v = 0.0;  // log of exp(4 (sqrt2 + 1)(v - T/2))
};

// Truncation level for the perturbed pair supremum. K values can exceed
// 2^53; log_K_required is the exact bookkeeping quantity.
struct TruncationBudget {
  double epsilon = 0.0;
  double c = 0.0;
  std::size_t pilot_reps = 0;
  double K_required = 0.0;
  double log_K_required = 0.0;
  TruncationComponents components;
};

// Sum over k >= K of exp(-(k/4) log k + 2k), with a certified upper bound
// on the part beyond the last summed term below tail_tol.
double k1_tail(double K, double tail_tol = 0.0);

// Log of a certified upper bound on sum_{i > K} exp(-log(i)^2 / (32 c^2)).
double log_k2_tail_bound(double K, double c);

TruncationBudget truncation_budget(double epsilon, double c,
                                   std::size_t pilot_reps = kDefaultPilotReps);

// Brute-force max over i < j <= eta.size() of (eta_i + eta_j)/sqrt2 + c Z_ij
// with Z drawn sequentially in lexicographic pair order.
double perturbed_pair_sup(std::span<const double> eta, double c, RngStream& z_stream);

// Exact draw of sup_{i<j<=K} (eta_i + eta_j)/sqrt2 + c Z_ij without
// materializing the K points or the K^2/2 normals.
double sample_perturbed_sup(double c, double K, RngStream& stream);

// Shift subtracted from the critical supremum: sqrt2 lambda, matching
// c_n (1 - sqrt(2r)) sqrt2 d_n, or plain lambda.
enum class CriticalDrift { sqrt2_lambda, lambda };

double critical_drift(double lambda, CriticalDrift drift) noexcept;

class CriticalLimitSampler {
 public:
  // Truncation from truncation_budget(epsilon, sqrt(2 lambda)).
  CriticalLimitSampler(double lambda, double epsilon, std::size_t pilot_reps = kDefaultPilotReps,
                       CriticalDrift drift = CriticalDrift::sqrt2_lambda);

  // Explicit truncation level, used by the doubling check.
  static CriticalLimitSampler with_truncation(double lambda, double K, CriticalDrift drift = CriticalDrift::sqrt2_lambda);

  double lambda() const noexcept { return lambda_; }
  CriticalDrift drift() const noexcept { return drift_; }
  double K() const noexcept { return K_; }
  const std::optional<TruncationBudget>& budget() const noexcept { return budget_; }

  double operator()(RngStream& stream) const;

 private:
  CriticalLimitSampler() = default;

  double lambda_ = 0.0;
  double K_ = 2.0;
  CriticalDrift drift_ = CriticalDrift::sqrt2_lambda;
  std::optional<TruncationBudget> budget_;
};

// sup_{i<j<=K} {(eta_i+eta_j)/sqrt2 + sqrt(2 lambda) Z_ij} - critical_drift(lambda)
// with K from the (cached) truncation budget; (eta_1+eta_2)/sqrt2 when lambda = 0.
double sample_limit_critical(double lambda, double epsilon, RngStream& stream,
                             CriticalDrift drift = CriticalDrift::sqrt2_lambda);

struct CriticalLaw {
  double lambda = 0.0;
  CriticalDrift drift = CriticalDrift::sqrt2_lambda;
};

using LimitLawSpec = std::variant<GumbelLaw, CriticalLaw>;

struct QuantileEstimate {
  double estimate = 0.0;
  double half_width = 0.0;
  std::size_t reps = 0;
};

inline constexpr double kQuantileConfidenceZ = 2.5758293035489004;

QuantileEstimate limit_quantile(const LimitLawSpec& law, double alpha, double epsilon,
                                std::size_t reps, RngStream& stream);
QuantileEstimate limit_quantile(const std::function<double(RngStream&)>& sampler, double alpha,
                                std::size_t reps, RngStream& stream);

// Order-statistic (1 - alpha)-quantile of a sample with a binomial
// confidence half-width.
QuantileEstimate empirical_quantile(std::vector<double> sample, double alpha);

double sample_gamma(double shape, RngStream& stream);

}  // namespace sefield
