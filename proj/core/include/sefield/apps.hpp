#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sefield/limits.hpp"
#include "sefield/marginals.hpp"
#include "sefield/rng.hpp"

namespace sefield {

enum class Application { interpoint, covariance, pearson };

// Field correlation parameter behind each statistic:
//   interpoint  (kappa - 1) / (2 kappa + 2)
//   covariance  rho / (1 + rho)
//   pearson     (rho + (kappa-5) rho^2/4) / (1 + 2 rho + (kappa-5) rho^2/2)
// alternate_form selects (rho - rho^2/2) / (1 + 2 rho - rho^2/2) for pearson.
double correlation_parameter(Application app, double kappa, double rho, bool alternate_form = false);

struct PopulationSpec {
  std::int64_t n = 2;  // observations
  std::int64_t p = 2;  // coordinates (columns)
  double rho = 0.0;
  MarginalSpec marginal = MarginalSpec::standard_normal();
};

void validate(const PopulationSpec& pop);

// n x p matrix stored row-major (observation-major). For the interpoint
// statistic the p columns are the points in R^n.
struct Dataset {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::vector<double> values;

  double operator()(std::int64_t k, std::int64_t i) const noexcept {
    return values[static_cast<std::size_t>(k * p + i)];
  }
  double& operator()(std::int64_t k, std::int64_t i) noexcept {
    return values[static_cast<std::size_t>(k * p + i)];
  }
};

// x_ki = sqrt(rho) xi_k + sqrt(1 - rho) xi_ki. Variate m = k (p+1) + j uses
// stream positions 2m, 2m+1; j = 0 is the row's common factor.
Dataset generate_dataset(const PopulationSpec& pop, const RngStream& stream);

struct InterpointResult {
  double D = 0.0;
  double D2 = 0.0;
};

InterpointResult max_interpoint(const Dataset& data);
// max_{i<j} sum_k (x_ki - mean_i)(x_kj - mean_j)
double max_sample_cov(const Dataset& data);
double max_sample_corr(const Dataset& data);
// max_{i<j} sum_k x_ki x_kj, the uncentered diagnostic.
double max_uncentered_cov(const Dataset& data);

enum class InterpointMode { gumbel, critical };
enum class RnRegime { i, ii, iii, new_i, new_ii };
enum class MnRegime { i, ii, iii };

// (D^2 - 2n) / sqrt(2n (1 + kappa))
double raw_interpoint_statistic(double D2, std::int64_t n, double kappa);
double standardize_interpoint(double D2, std::int64_t n, std::int64_t p, double kappa, InterpointMode mode);
double standardize_Rn(double R, std::int64_t n, std::int64_t p, double rho, RnRegime regime);
double standardize_Mn(double M, std::int64_t n, std::int64_t p, double rho, double kappa, MnRegime regime);

// Covariances of products by index overlap (0, 1, 2).
struct OverlapTable {
  double overlap0 = 0.0;
  double overlap1 = 0.0;
  double overlap2 = 0.0;
};

// Cov(x_i x_j, x_k x_l) for one observation of the latent model.
OverlapTable product_covariance_table(double rho, double kappa);
// E(T_ij T_kl) with T_ij = x_i x_j - (rho/2)(x_i^2 + x_j^2).
OverlapTable t_statistic_table(double rho, double kappa);

struct MixtureNormalPlusGumbel {  // G1/(2 lambda) + N(0, kappa - 1)
  double lambda = 1.0;
  double kappa = 3.0;
};
struct MixtureNormalPlusG1 {  // N(0, 2 lambda1 lambda2^2) + G1
  double lambda1 = 1.0;
  double lambda2 = 1.0;
};
struct MixtureNormalPlusScaledSup {  // N(0, lambda1) + sqrt(lambda2) * critical(lambda2 / 2)
  double lambda1 = 1.0;
  double lambda2 = 1.0;
};

using MixtureLaw = std::variant<MixtureNormalPlusGumbel, MixtureNormalPlusG1, MixtureNormalPlusScaledSup>;

// Normal component from child stream 1, the other component from child 2.
double mixture_limit_sample(const MixtureLaw& law, double epsilon, const RngStream& stream);

enum class RegimeZone { gumbel, critical, degenerate };

struct ConditionFlags {
  bool b1 = false;  // moment of order 2s + eps finite for some s > 2
  bool b2 = false;  // sub-Gaussian
  bool b3 = false;  // bounded support
  bool c1 = false;  // p/n within [0.01, 100]
  bool c2 = false;  // moment of order 12 + eps finite
  bool c3 = false;  // E xi^14 <= 1000 kappa^6
};

struct RegimeReport {
  Application application = Application::interpoint;
  double kappa = 0.0;
  double r = 0.0;
  RegimeZone zone = RegimeZone::gumbel;
  double lambda = 0.0;          // (1 - 2r) log p
  double gumbel_proxy = 0.0;    // (1 - 2r) sqrt(log p) / log log p
  double growth_exponent = 0.0; // log kappa / log log p
  ConditionFlags flags;
};

inline constexpr double kGumbelProxyCut = 0.5;
inline constexpr double kDegenerateLambdaCut = 0.05;

RegimeReport classify_regime(const PopulationSpec& pop, Application app);

std::string to_string(Application app);
std::string to_string(RegimeZone zone);

}  // namespace sefield
