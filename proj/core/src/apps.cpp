#include "sefield/apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sefield/errors.hpp"
#include "sefield/field.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/special.hpp"

namespace sefield {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clamp_r(double r, const char* what) {
  if (r < 0.0) {
    if (r < -1e-12) throw DomainError(std::string(what) + ": mapped r = " + std::to_string(r) + " is below 0");
    return 0.0;
  }
  if (r > 0.5) {
    if (r > 0.5 + 1e-12) throw DomainError(std::string(what) + ": mapped r = " + std::to_string(r) + " exceeds 1/2");
    return 0.5;
  }
  return r;
}

// Accumulates op(x_ki, x_kj) over k for every pair i < j, observation by
// observation; each pair's sum runs over k in ascending order.
template <class Op>
std::vector<double> pair_sums(const double* rows, std::int64_t n, std::int64_t p, Op op) {
  const auto up = static_cast<std::size_t>(p);
  std::vector<double> acc(up * (up - 1) / 2, 0.0);
  for (std::int64_t k = 0; k < n; ++k) {
    const double* row = rows + static_cast<std::size_t>(k) * up;
    std::size_t off = 0;
    for (std::size_t i = 0; i + 1 < up; ++i) {
      const double xi = row[i];
      double* a = acc.data() + off - (i + 1);
      for (std::size_t j = i + 1; j < up; ++j) a[j] += op(xi, row[j]);
      off += up - 1 - i;
    }
  }
  return acc;
}

void require_shape(const Dataset& data, std::int64_t min_n, const char* what) {
  if (data.p < 2) throw DomainError(std::string(what) + ": need at least two columns");
  if (data.n < min_n) throw DomainError(std::string(what) + ": too few observations");
  if (data.values.size() != static_cast<std::size_t>(data.n * data.p))
    throw DomainError(std::string(what) + ": value count does not match n x p");
}

std::vector<double> centered(const Dataset& data) {
  const auto up = static_cast<std::size_t>(data.p);
  std::vector<double> mean(up, 0.0);
  for (std::int64_t k = 0; k < data.n; ++k)
    for (std::size_t i = 0; i < up; ++i) mean[i] += data.values[static_cast<std::size_t>(k) * up + i];
  for (auto& m : mean) m /= static_cast<double>(data.n);
  std::vector<double> y(data.values.size());
  for (std::int64_t k = 0; k < data.n; ++k)
    for (std::size_t i = 0; i < up; ++i) {
      const std::size_t at = static_cast<std::size_t>(k) * up + i;
      y[at] = data.values[at] - mean[i];
    }
  return y;
}

double classical_centering(double L) { return 2.0 * std::sqrt(L) - std::log(L) / (4.0 * std::sqrt(L)); }

double log_p_checked(std::int64_t p, const char* what) {
  if (p < 3) throw DomainError(std::string(what) + ": p must be >= 3");
  return std::log(static_cast<double>(p));
}

}  // namespace

double correlation_parameter(Application app, double kappa, double rho, bool alternate_form) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw DomainError("correlation_parameter: kappa must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("correlation_parameter: rho must lie in [0,1)");
  switch (app) {
    case Application::interpoint:
      return clamp_r((kappa - 1.0) / (2.0 * kappa + 2.0), "interpoint");
    case Application::covariance:
      return clamp_r(rho / (1.0 + rho), "covariance");
    case Application::pearson: {
      const double r2 = rho * rho;
      if (alternate_form) return clamp_r((rho - r2 / 2.0) / (1.0 + 2.0 * rho - r2 / 2.0), "pearson");
      return clamp_r((rho + (kappa - 5.0) / 4.0 * r2) / (1.0 + 2.0 * rho + (kappa - 5.0) / 2.0 * r2), "pearson");
    }
  }
  throw DomainError("correlation_parameter: unknown application");
}

void validate(const PopulationSpec& pop) {
  if (pop.n < 2) throw DomainError("population: n must be >= 2");
  if (pop.p < 2) throw DomainError("population: p must be >= 2");
  if (!(pop.rho >= 0.0 && pop.rho < 1.0)) throw DomainError("population: rho must lie in [0,1)");
}

Dataset generate_dataset(const PopulationSpec& pop, const RngStream& stream) {
  validate(pop);
  Dataset d;
  d.n = pop.n;
  d.p = pop.p;
  d.values.resize(static_cast<std::size_t>(pop.n * pop.p));
  const double a = std::sqrt(pop.rho);
  const double b = std::sqrt(1.0 - pop.rho);
  const auto stride = static_cast<std::uint64_t>(pop.p + 1);
  for (std::int64_t k = 0; k < pop.n; ++k) {
    const std::uint64_t base = static_cast<std::uint64_t>(k) * stride;
    const double common = pop.rho > 0.0 ? pop.marginal.sample_at(stream, base) : 0.0;
    for (std::int64_t i = 0; i < pop.p; ++i)
      d(k, i) = a * common + b * pop.marginal.sample_at(stream, base + 1 + static_cast<std::uint64_t>(i));
  }
  return d;
}

InterpointResult max_interpoint(const Dataset& data) {
  require_shape(data, 1, "max_interpoint");
  const auto acc = pair_sums(data.values.data(), data.n, data.p, [](double x, double y) {
    const double t = x - y;
    return t * t;
  });
  const double d2 = *std::max_element(acc.begin(), acc.end());
  return InterpointResult{std::sqrt(d2), d2};
}

double max_sample_cov(const Dataset& data) {
  require_shape(data, 2, "max_sample_cov");
  const auto y = centered(data);
  const auto acc = pair_sums(y.data(), data.n, data.p, [](double x, double z) { return x * z; });
  return *std::max_element(acc.begin(), acc.end());
}

double max_sample_corr(const Dataset& data) {
  require_shape(data, 2, "max_sample_corr");
  const auto y = centered(data);
  const auto up = static_cast<std::size_t>(data.p);
  std::vector<double> ss(up, 0.0);
  for (std::int64_t k = 0; k < data.n; ++k)
    for (std::size_t i = 0; i < up; ++i) {
      const double v = y[static_cast<std::size_t>(k) * up + i];
      ss[i] += v * v;
    }
  for (std::size_t i = 0; i < up; ++i)
    if (!(ss[i] > 0.0)) throw DomainError("max_sample_corr: column " + std::to_string(i) + " has zero sample variance");
  const auto acc = pair_sums(y.data(), data.n, data.p, [](double x, double z) { return x * z; });
  double best = kNegInf;
  std::size_t e = 0;
  for (std::size_t i = 0; i + 1 < up; ++i)
    for (std::size_t j = i + 1; j < up; ++j, ++e)
      best = std::max(best, acc[e] / (std::sqrt(ss[i]) * std::sqrt(ss[j])));
  return best;
}

double max_uncentered_cov(const Dataset& data) {
  require_shape(data, 1, "max_uncentered_cov");
  const auto acc = pair_sums(data.values.data(), data.n, data.p, [](double x, double z) { return x * z; });
  return *std::max_element(acc.begin(), acc.end());
}

double raw_interpoint_statistic(double D2, std::int64_t n, double kappa) {
  if (n < 1) throw DomainError("interpoint: n must be positive");
  if (!(kappa >= 1.0)) throw DomainError("interpoint: kappa must be >= 1");
  const double nn = static_cast<double>(n);
  return (D2 - 2.0 * nn) / std::sqrt(2.0 * nn * (1.0 + kappa));
}

double standardize_interpoint(double D2, std::int64_t n, std::int64_t p, double kappa, InterpointMode mode) {
  if (n < 3 || p < 3) throw DomainError("standardize_interpoint: n and p must be >= 3");
  const double z = raw_interpoint_statistic(D2, n, kappa);
  const auto k = norm_constants(p, 0.0);
  if (mode == InterpointMode::gumbel) {
    const double s = kSqrt2 * k.c;
    return s * (z - s + std::log(4.0 * std::sqrt(kPi) * k.c) / s);
  }
  return k.c * (z - kSqrt2 * k.d);
}

double standardize_Rn(double R, std::int64_t n, std::int64_t p, double rho, RnRegime regime) {
  if (n < 1) throw DomainError("standardize_Rn: n must be positive");
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("standardize_Rn: rho must lie in [0,1)");
  const double L = log_p_checked(p, "standardize_Rn");
  const double sn = std::sqrt(static_cast<double>(n));
  const double base = R / sn - rho * sn;
  const double shrink = std::sqrt(1.0 - rho * rho);
  switch (regime) {
    case RnRegime::i:
    case RnRegime::new_i:
      return 2.0 * std::sqrt(L) * (base - classical_centering(L) * shrink);
    case RnRegime::ii:
    case RnRegime::iii:
      if (rho == 0.0) throw DomainError("standardize_Rn: scale 1/rho degenerates at rho = 0");
      return (base - classical_centering(L) * shrink) / rho;
    case RnRegime::new_ii: {
      const double centre = 2.0 * std::sqrt(L) - (std::log(L) + std::log(4.0 * kPi)) / (2.0 * std::sqrt(L));
      return L * (base - centre * shrink);
    }
  }
  throw DomainError("standardize_Rn: unknown regime");
}

double standardize_Mn(double M, std::int64_t n, std::int64_t p, double rho, double kappa, MnRegime regime) {
  if (n < 1) throw DomainError("standardize_Mn: n must be positive");
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("standardize_Mn: rho must lie in [0,1)");
  if (!(kappa >= 1.0)) throw DomainError("standardize_Mn: kappa must be >= 1");
  const double L = log_p_checked(p, "standardize_Mn");
  const double sn = std::sqrt(static_cast<double>(n));
  const double radicand = 1.0 + 2.0 * rho + (kappa - 5.0) / 2.0 * rho * rho;
  const double star = sn * M - rho * sn - (1.0 - rho) * std::sqrt(radicand) * classical_centering(L);
  switch (regime) {
    case MnRegime::i:
      return 2.0 * std::sqrt(L) * star;
    case MnRegime::ii:
      if (rho == 0.0) throw DomainError("standardize_Mn: scale 1/rho degenerates at rho = 0");
      return star / rho;
    case MnRegime::iii:
      if (rho == 0.0) throw DomainError("standardize_Mn: scale 1/(rho(1-rho)) degenerates at rho = 0");
      return star / (rho * (1.0 - rho));
  }
  throw DomainError("standardize_Mn: unknown regime");
}

OverlapTable product_covariance_table(double rho, double kappa) {
  const double r2 = rho * rho;
  return OverlapTable{(kappa - 1.0) * r2, rho + (kappa - 2.0) * r2, 1.0 + (kappa - 2.0) * r2};
}

OverlapTable t_statistic_table(double rho, double kappa) {
  const double r2 = rho * rho;
  const double s = (1.0 - rho) * (1.0 - rho);
  return OverlapTable{s * (kappa - 1.0) * r2, s * (rho + (5.0 * kappa - 9.0) / 4.0 * r2),
                      s * (1.0 + 2.0 * rho + r2 / 2.0 * (3.0 * kappa - 7.0))};
}

double mixture_limit_sample(const MixtureLaw& law, double epsilon, const RngStream& stream) {
  RngStream normal_part = stream.child(1);
  RngStream other_part = stream.child(2);
  if (const auto* a = std::get_if<MixtureNormalPlusGumbel>(&law)) {
    if (!(a->lambda > 0.0) || !(a->kappa >= 1.0)) throw DomainError("gumbel_plus_normal: need lambda > 0, kappa >= 1");
    return sample_gumbel(GumbelLaw::g1(), other_part) / (2.0 * a->lambda) +
           std::sqrt(a->kappa - 1.0) * normal_part.normal();
  }
  if (const auto* b = std::get_if<MixtureNormalPlusG1>(&law)) {
    if (!(b->lambda1 >= 0.0) || !(b->lambda2 >= 0.0)) throw DomainError("normal_plus_G1: parameters must be >= 0");
    return std::sqrt(2.0 * b->lambda1) * b->lambda2 * normal_part.normal() + sample_gumbel(GumbelLaw::g1(), other_part);
  }
  const auto& c = std::get<MixtureNormalPlusScaledSup>(law);
  if (!(c.lambda1 >= 0.0) || !(c.lambda2 > 0.0)) throw DomainError("normal_plus_scaled_sup: need lambda1 >= 0, lambda2 > 0");
  return std::sqrt(c.lambda1) * normal_part.normal() +
         std::sqrt(c.lambda2) * sample_limit_critical(c.lambda2 / 2.0, epsilon, other_part);
}

RegimeReport classify_regime(const PopulationSpec& pop, Application app) {
  validate(pop);
  RegimeReport rep;
  rep.application = app;
  rep.kappa = pop.marginal.kappa();
  const double rho = app == Application::interpoint ? 0.0 : pop.rho;
  rep.r = correlation_parameter(app, rep.kappa, rho);
  const double L = std::log(static_cast<double>(pop.p));
  const double LL = std::log(L);
  const double f = 1.0 - 2.0 * rep.r;
  rep.lambda = f * L;
  rep.gumbel_proxy = LL > 0.0 ? f * std::sqrt(L) / LL : std::numeric_limits<double>::infinity();
  rep.growth_exponent = LL > 0.0 ? std::log(rep.kappa) / LL : 0.0;
  if (rep.lambda < kDegenerateLambdaCut)
    rep.zone = RegimeZone::degenerate;
  else if (rep.gumbel_proxy >= kGumbelProxyCut)
    rep.zone = RegimeZone::gumbel;
  else
    rep.zone = RegimeZone::critical;

  const auto kind = pop.marginal.kind();
  const double m14 = pop.marginal.even_moment(7);
  const double ratio = static_cast<double>(pop.p) / static_cast<double>(pop.n);
  rep.flags.b1 = std::isfinite(m14);
  rep.flags.b2 = true;
  rep.flags.b3 = kind != MarginalKind::standard_normal;
  rep.flags.c1 = ratio >= 0.01 && ratio <= 100.0;
  rep.flags.c2 = std::isfinite(m14);
  rep.flags.c3 = m14 <= 1000.0 * std::pow(rep.kappa, 6.0);
  return rep;
}

std::string to_string(Application app) {
  switch (app) {
    case Application::interpoint:
      return "interpoint";
    case Application::covariance:
      return "covariance";
    case Application::pearson:
      return "pearson";
  }
  return "unknown";
}

std::string to_string(RegimeZone zone) {
  switch (zone) {
    case RegimeZone::gumbel:
      return "gumbel";
    case RegimeZone::critical:
      return "critical";
    case RegimeZone::degenerate:
      return "degenerate";
  }
  return "unknown";
}

}  // namespace sefield
