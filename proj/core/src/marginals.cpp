#include "sefield/marginals.hpp"

#include <cmath>
#include <sstream>

#include "sefield/errors.hpp"
#include "sefield/special.hpp"

namespace sefield {

MarginalSpec MarginalSpec::standard_normal() {
  MarginalSpec m;
  m.kind_ = MarginalKind::standard_normal;
  m.fill_moments();
  return m;
}

MarginalSpec MarginalSpec::uniform_mixture(double e) {
  if (!(e >= 10.0) || !std::isfinite(e)) throw DomainError("uniform_mixture: e must be >= 10");
  MarginalSpec m;
  m.kind_ = MarginalKind::uniform_mixture;
  m.e_ = e;
  m.delta_ = 2.0 / (7.0 * e * e - 1.0);
  m.fill_moments();
  return m;
}

MarginalSpec MarginalSpec::three_point(double logp, double lambda1) {
  if (!(logp > 0.0) || !std::isfinite(logp)) throw DomainError("three_point: logp must be positive");
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) throw DomainError("three_point: lambda1 must be positive");
  MarginalSpec m;
  m.kind_ = MarginalKind::three_point;
  m.logp_ = logp;
  m.lambda1_ = lambda1;
  const double l2 = logp * logp;
  m.atom_ = std::sqrt((l2 + lambda1) / l2);
  m.atom_prob_ = l2 / (2.0 * (lambda1 + l2));
  m.fill_moments();
  return m;
}

MarginalSpec MarginalSpec::rademacher() {
  MarginalSpec m;
  m.kind_ = MarginalKind::rademacher;
  m.fill_moments();
  return m;
}

void MarginalSpec::fill_moments() {
  moments_[0] = 1.0;
  for (int k = 1; k < 8; ++k) {
    switch (kind_) {
      case MarginalKind::standard_normal:
        moments_[k] = moments_[k - 1] * (2.0 * k - 1.0);
        break;
      case MarginalKind::uniform_mixture: {
        const double kk = 2.0 * k;
        moments_[k] = (1.0 + delta_ * ((std::pow(2.0, kk + 1.0) - 1.0) * std::pow(e_, kk) - 1.0)) / (kk + 1.0);
        break;
      }
      case MarginalKind::three_point:
        moments_[k] = std::pow(atom_, 2.0 * k - 2.0);
        break;
      case MarginalKind::rademacher:
        moments_[k] = 1.0;
        break;
    }
  }
}

double MarginalSpec::even_moment(int k) const {
  if (k < 0 || k > 7) throw DomainError("marginal moments: k must lie in 0..7");
  return moments_[static_cast<std::size_t>(k)];
}

double MarginalSpec::sample_at(const RngStream& stream, std::uint64_t m) const noexcept {
  const double u = stream.uniform_at(2 * m);
  switch (kind_) {
    case MarginalKind::standard_normal:
      return normal_quantile(u);
    case MarginalKind::uniform_mixture: {
      const double v = stream.uniform_at(2 * m + 1);
      if (v < delta_) {
        const double s = 2.0 * u - 1.0;
        return s < 0.0 ? -e_ * (1.0 - s) : e_ * (1.0 + s);
      }
      return 2.0 * u - 1.0;
    }
    case MarginalKind::three_point:
      if (u < atom_prob_) return -atom_;
      if (u > 1.0 - atom_prob_) return atom_;
      return 0.0;
    case MarginalKind::rademacher:
      return u < 0.5 ? -1.0 : 1.0;
  }
  return 0.0;
}

std::string MarginalSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case MarginalKind::standard_normal:
      return "normal";
    case MarginalKind::uniform_mixture:
      os << "uniform_mixture(e=" << e_ << ")";
      return os.str();
    case MarginalKind::three_point:
      os << "three_point(logp=" << logp_ << ",lambda1=" << lambda1_ << ")";
      return os.str();
    case MarginalKind::rademacher:
      return "rademacher";
  }
  return "unknown";
}

double marginal_moments(const MarginalSpec& spec, int k) {
  if (k < 1 || k > 7) throw DomainError("marginal_moments: k must lie in 1..7");
  return spec.even_moment(k);
}

}  // namespace sefield
