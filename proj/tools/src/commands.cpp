#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include "sefield/apps.hpp"
#include "sefield/chenstein.hpp"
#include "sefield/dataset_io.hpp"
#include "sefield/errors.hpp"
#include "sefield/field.hpp"
#include "sefield/fwer.hpp"
#include "sefield/limits.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/parallel.hpp"
#include "sefield/special.hpp"
#include "sefield/spectra.hpp"
#include "sefield/stats.hpp"

namespace sefield::cli {

namespace {

using json = nlohmann::json;
using ull = unsigned long long;
using ll = long long;

MarginalSpec parse_marginal(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(':', start);
    parts.push_back(s.substr(start, at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  auto num = [&](std::size_t k) {
    Params p;
    p.values["marginal"] = parts[k];
    return p.real("marginal");
  };
  const auto& kind = parts[0];
  if (kind == "normal" && parts.size() == 1) return MarginalSpec::standard_normal();
  if (kind == "rademacher" && parts.size() == 1) return MarginalSpec::rademacher();
  if ((kind == "mixture" || kind == "uniform_mixture") && parts.size() == 2) return MarginalSpec::uniform_mixture(num(1));
  if (kind == "three_point" && parts.size() == 3) return MarginalSpec::three_point(num(1), num(2));
  throw ConfigError("marginal: expected normal, rademacher, mixture:E or three_point:LOGP:LAMBDA1 (got '" + s + "')");
}

json regime_json(const RegimeReport& r) {
  return json{{"application", to_string(r.application)},
              {"kappa", r.kappa},
              {"r", r.r},
              {"zone", to_string(r.zone)},
              {"lambda", r.lambda},
              {"gumbel_proxy", r.gumbel_proxy},
              {"growth_exponent", r.growth_exponent},
              {"flags",
               {{"b1", r.flags.b1},
                {"b2", r.flags.b2},
                {"b3", r.flags.b3},
                {"c1", r.flags.c1},
                {"c2", r.flags.c2},
                {"c3", r.flags.c3}}}};
}

RnRegime parse_rn_regime(const std::string& s) {
  if (s == "i") return RnRegime::i;
  if (s == "ii") return RnRegime::ii;
  if (s == "iii") return RnRegime::iii;
  if (s == "new_i") return RnRegime::new_i;
  if (s == "new_ii") return RnRegime::new_ii;
  throw ConfigError("rn-regime: expected i, ii, iii, new_i or new_ii (got '" + s + "')");
}

MnRegime parse_mn_regime(const std::string& s) {
  if (s == "i") return MnRegime::i;
  if (s == "ii") return MnRegime::ii;
  if (s == "iii") return MnRegime::iii;
  throw ConfigError("mn-regime: expected i, ii or iii (got '" + s + "')");
}

CommandResult field_max(const Params& p) {
  const auto n = p.integer("n", 3);
  double r = 0.0;
  if (p.has("lambda")) {
    if (p.has("r")) throw ConfigError("r: give either r or lambda, not both");
    r = r_for_lambda(n, p.real("lambda"));
  } else {
    r = p.real_in("r", 0.0, 0.5);
  }
  const auto& m = p.str("mode");
  if (m != "theorem1" && m != "theorem23") throw ConfigError("mode: expected theorem1 or theorem23 (got '" + m + "')");
  const auto mode = m == "theorem1" ? CenteringMode::theorem1 : CenteringMode::theorem23;
  const auto reps = static_cast<std::uint64_t>(p.integer("reps", 1));
  const auto seed = p.seed();
  const auto params = make_field_params(n, r);
  const auto maxima =
      parallel_map(reps, p.workers(), [&](std::uint64_t k) { return sample_max(params, RngStream::replicate(seed, k)); });
  CommandResult out{CsvTable({"replicate", "max", "standardized"})};
  for (std::uint64_t k = 0; k < reps; ++k)
    out.table.row().add(static_cast<ull>(k)).add(maxima[k]).add(standardize_max(maxima[k], n, mode));
  out.extra["r"] = r;
  return out;
}

CommandResult limit_sample(const Params& p) {
  const double lambda = p.real("lambda");
  const double eps = p.real_in("epsilon", 1e-6, 0.999);
  const auto reps = static_cast<std::uint64_t>(p.integer("reps", 1));
  const auto seed = p.seed();
  const auto pilot = static_cast<std::size_t>(p.integer("pilot-reps", 1000));
  const auto& dn = p.str("drift");
  if (dn != "sqrt2_lambda" && dn != "lambda") throw ConfigError("drift: expected sqrt2_lambda or lambda (got '" + dn + "')");
  const auto drift = dn == "lambda" ? CriticalDrift::lambda : CriticalDrift::sqrt2_lambda;
  CommandResult out{CsvTable({"replicate", "value"})};
  std::vector<double> v;
  if (lambda == 0.0) {
    v = parallel_map(reps, p.workers(), [&](std::uint64_t k) {
      RngStream s = RngStream::replicate(seed, k);
      return sample_limit_critical(0.0, eps, s);
    });
  } else {
    const CriticalLimitSampler sampler(lambda, eps, pilot, drift);
    v = parallel_map(reps, p.workers(), [&](std::uint64_t k) {
      RngStream s = RngStream::replicate(seed, k);
      return sampler(s);
    });
    const auto& b = *sampler.budget();
    out.extra["truncation"] = {{"K_required", b.K_required},
                               {"log_K_required", b.log_K_required},
                               {"K1", b.components.K1},
                               {"K2", b.components.K2},
                               {"K3", b.components.K3},
                               {"T_eps", b.components.T_eps},
                               {"v_eps", b.components.v_eps}};
  }
  for (std::uint64_t k = 0; k < reps; ++k) out.table.row().add(static_cast<ull>(k)).add(v[k]);
  return out;
}

CommandResult chen_stein(const Params& p) {
  const auto ns = p.integers("n", 3);
  const auto rs = p.reals("r");
  const auto ys = p.reals("y");
  const double slack = p.real("slack");
  CommandResult out{CsvTable({"n", "r", "y", "t", "u", "p12", "mean", "exp_minus_y", "b1", "b2_exponent", "b2_bound_log",
                              "total_error_bound", "alpha", "L"})};
  for (double r : rs)
    for (double y : ys)
      for (auto n : ns) {
        const auto rep = chen_stein_report(n, r, y, slack);
        out.table.row()
            .add(static_cast<ll>(n))
            .add(r)
            .add(y)
            .add(rep.t)
            .add(rep.u)
            .add(rep.p12)
            .add(rep.mean)
            .add(std::exp(-y))
            .add(rep.b1)
            .add(rep.b2_exponent)
            .add(rep.b2_bound_log)
            .add(rep.total_error_bound)
            .add(rep.alpha)
            .add(rep.L);
      }
  return out;
}

CommandResult spectra_verify(const Params& p) {
  const auto ps = p.integers("p", 4);
  const auto bs = p.reals("b");
  const double tol = p.real("tol");
  CommandResult out{CsvTable({"p", "b", "dimension", "max_deviation", "clusters", "match"})};
  bool all = true;
  for (auto pp : ps)
    for (double b : bs) {
      const auto spec = make_pair_matrix_spec(pp, b);
      const auto c = verify_spectrum(spec, tol);
      all = all && c.match;
      out.table.row()
          .add(static_cast<ll>(pp))
          .add(b)
          .add(static_cast<ull>(spec.dimension()))
          .add(c.max_deviation)
          .add(static_cast<ull>(c.clusters))
          .add(std::string(c.match ? "1" : "0"));
    }
  if (!all) out.exit_code = 3;
  return out;
}

CommandResult app_interpoint(const Params& p) {
  const auto& m = p.str("mode");
  if (m != "gumbel" && m != "critical") throw ConfigError("mode: expected gumbel or critical (got '" + m + "')");
  const auto mode = m == "gumbel" ? InterpointMode::gumbel : InterpointMode::critical;
  const auto marginal = parse_marginal(p.str("marginal"));
  CommandResult out{CsvTable({"replicate", "D2", "standardized"})};
  if (p.has("input")) {
    const auto d = read_matrix_file(p.str("input"));
    const auto r = max_interpoint(d);
    out.table.row().add(0ull).add(r.D2).add(standardize_interpoint(r.D2, d.n, d.p, marginal.kappa(), mode));
    return out;
  }
  const PopulationSpec pop{p.integer("n", 3), p.integer("p", 3), 0.0, marginal};
  validate(pop);
  const auto reps = static_cast<std::uint64_t>(p.integer("reps", 1));
  const auto seed = p.seed();
  const auto d2 = parallel_map(reps, p.workers(),
                               [&](std::uint64_t k) { return max_interpoint(generate_dataset(pop, RngStream::replicate(seed, k))).D2; });
  for (std::uint64_t k = 0; k < reps; ++k)
    out.table.row().add(static_cast<ull>(k)).add(d2[k]).add(standardize_interpoint(d2[k], pop.n, pop.p, marginal.kappa(), mode));
  out.extra["regime"] = regime_json(classify_regime(pop, Application::interpoint));
  return out;
}

CommandResult app_corr(const Params& p) {
  const auto marginal = parse_marginal(p.str("marginal"));
  const double rho = p.real_in("rho", 0.0, 0.999999);
  const auto rn = parse_rn_regime(p.str("rn-regime"));
  const auto mn = parse_mn_regime(p.str("mn-regime"));
  CommandResult out{CsvTable({"replicate", "R", "M", "R_standardized", "M_standardized"})};
  auto emit = [&](std::uint64_t k, double R, double M, std::int64_t n, std::int64_t pp) {
    out.table.row()
        .add(static_cast<ull>(k))
        .add(R)
        .add(M)
        .add(standardize_Rn(R, n, pp, rho, rn))
        .add(standardize_Mn(M, n, pp, rho, marginal.kappa(), mn));
  };
  if (p.has("input")) {
    const auto d = read_matrix_file(p.str("input"));
    emit(0, max_sample_cov(d), max_sample_corr(d), d.n, d.p);
    return out;
  }
  const PopulationSpec pop{p.integer("n", 2), p.integer("p", 3), rho, marginal};
  validate(pop);
  const auto reps = static_cast<std::uint64_t>(p.integer("reps", 1));
  const auto seed = p.seed();
  std::vector<double> R(reps), M(reps);
  parallel_for(reps, p.workers(), [&](std::uint64_t k) {
    const auto d = generate_dataset(pop, RngStream::replicate(seed, k));
    R[k] = max_sample_cov(d);
    M[k] = max_sample_corr(d);
  });
  for (std::uint64_t k = 0; k < reps; ++k) emit(k, R[k], M[k], pop.n, pop.p);
  out.extra["regime_covariance"] = regime_json(classify_regime(pop, Application::covariance));
  out.extra["regime_pearson"] = regime_json(classify_regime(pop, Application::pearson));
  return out;
}

FwerVariant parse_variant(const std::string& s) {
  if (s == "standard") return FwerVariant::standard;
  if (s == "log4pi") return FwerVariant::log4pi;
  throw ConfigError("variant: expected standard or log4pi (got '" + s + "')");
}

CommandResult fwer(const Params& p) {
  const auto ns = p.integers("n", 3);
  const auto alphas = p.reals("alpha");
  const auto variant = parse_variant(p.str("variant"));
  const auto reps = static_cast<std::uint64_t>(p.integer("reps", 0));
  const double r = p.real_in("r", 0.0, 0.5);
  CommandResult out{CsvTable({"n", "alpha", "q_alpha", "u", "r", "reps", "rejections", "rate", "half_width"})};
  const std::uint64_t seed = reps > 0 ? p.seed() : 0;
  for (auto n : ns) {
    std::vector<double> maxima;
    if (reps > 0) {
      if (reps < 1000) throw ConfigError("reps: calibration needs at least 1000 replicates");
      if (r >= 0.5) throw ConfigError("r: calibration needs r < 1/2");
      const auto params = make_field_params(n, r);
      maxima = parallel_map(reps, p.workers(),
                            [&](std::uint64_t k) { return sample_max(params, RngStream::replicate(seed, k)); });
    }
    for (double a : alphas) {
      const auto t = threshold(n, a, variant);
      out.table.row().add(static_cast<ll>(n)).add(a).add(t.q_alpha).add(t.u).add(r).add(static_cast<ull>(reps));
      if (reps > 0) {
        const auto e = fwer_from_maxima(maxima, t.u);
        out.table.add(static_cast<ull>(e.rejections)).add(e.rate).add(e.half_width);
      } else {
        out.table.add(std::string()).add(std::string()).add(std::string());
      }
    }
  }
  return out;
}

CommandResult fwer_reject(const Params& p) {
  const auto obs = read_observations_csv_file(p.str("observations"));
  const auto n = p.integer("n", 2);
  double u = 0.0;
  if (p.has("u")) {
    if (p.has("alpha")) throw ConfigError("u: give either u or alpha, not both");
    u = p.real("u");
  } else {
    u = threshold(n, p.real("alpha"), parse_variant(p.str("variant"))).u;
  }
  CommandResult out{CsvTable({"i", "j", "value"})};
  std::vector<double> value(pair_count(n));
  for (const auto& o : obs)
    if (o.i >= 1 && o.j > o.i && o.j <= n) value[pair_index(o.i - 1, o.j - 1, n)] = o.value;
  for (const auto& pr : reject_set(n, obs, u))
    out.table.row().add(static_cast<ll>(pr.i)).add(static_cast<ll>(pr.j)).add(value[pair_index(pr.i - 1, pr.j - 1, n)]);
  out.extra["u"] = u;
  return out;
}

CommandResult ks(const Params& p) {
  const auto a = read_csv_column(p.str("a"), p.has("column") ? p.str("column") : "");
  CommandResult out{CsvTable({"statistic", "n1", "n2", "location"})};
  KsResult res;
  if (p.has("b")) {
    if (p.has("cdf")) throw ConfigError("cdf: give either b or cdf, not both");
    const auto b = read_csv_column(p.str("b"), p.has("column-b") ? p.str("column-b") : (p.has("column") ? p.str("column") : ""));
    res = ks_two_sample(a, b);
  } else {
    const auto& name = p.str("cdf");
    if (name == "normal")
      res = ks_one_sample(a, normal_cdf);
    else if (name == "gumbel")
      res = ks_one_sample(a, [](double x) { return gumbel_cdf(x, GumbelLaw::standard()); });
    else if (name == "g1")
      res = ks_one_sample(a, [](double x) { return gumbel_cdf(x, GumbelLaw::g1()); });
    else
      throw ConfigError("cdf: expected normal, gumbel or g1 (got '" + name + "')");
  }
  out.table.row().add(res.statistic).add(static_cast<ull>(res.n1)).add(static_cast<ull>(res.n2)).add(res.location);
  if (p.has("ecdf")) {
    const Ecdf f(a);
    CsvTable t({"x", "ecdf"});
    for (double x : f.sorted()) t.row().add(x).add(f(x));
    t.write(p.str("ecdf"));
  }
  return out;
}

CommandResult dataset_generate(const Params& p) {
  const PopulationSpec pop{p.integer("n", 2), p.integer("p", 2), p.real_in("rho", 0.0, 0.999999), parse_marginal(p.str("marginal"))};
  validate(pop);
  const auto d = generate_dataset(pop, RngStream::replicate(p.seed(), static_cast<std::uint64_t>(p.integer("replicate", 0))));
  write_matrix_file(p.str("matrix"), d);
  CommandResult out{CsvTable({"n", "p", "rho", "marginal", "kappa", "matrix"})};
  out.table.row().add(static_cast<ll>(pop.n)).add(static_cast<ll>(pop.p)).add(pop.rho).add(pop.marginal.describe()).add(pop.marginal.kappa()).add(p.str("matrix"));
  return out;
}

const OptionSpec kSeed{"seed", "", "master seed (required)"};
const OptionSpec kWorkers{"workers", "1", "worker threads; results do not depend on it"};

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> all = {
      {"field-max", "field maxima and standardized values", "replicate,max,standardized",
       {{"n", "", "vertices"},
        {"r", "", "pair correlation in [0, 1/2]"},
        {"lambda", "", "alternative to r: (1-2r) log n = lambda"},
        {"mode", "theorem1", "theorem1 or theorem23 centering"},
        {"reps", "1000", "replicates"},
        kSeed,
        kWorkers},
       field_max},
      {"limit-sample", "draws of the critical-regime limit", "replicate,value",
       {{"lambda", "", "lambda >= 0"},
        {"epsilon", "0.01", "truncation accuracy"},
        {"pilot-reps", "100000", "pilot replicates for the truncation level"},
        {"drift", "sqrt2_lambda", "shift of the supremum: sqrt2_lambda or lambda"},
        {"reps", "10000", "draws"},
        kSeed,
        kWorkers},
       limit_sample},
      {"chen-stein", "Poisson approximation terms over an n grid",
       "n,r,y,t,u,p12,mean,exp_minus_y,b1,b2_exponent,b2_bound_log,total_error_bound,alpha,L",
       {{"n", "1000,10000,100000,1000000", "list or range of n"},
        {"r", "0", "list of r"},
        {"y", "-1,0,1", "list of y"},
        {"slack", "1", "power of log n allowed in the b2 bound"}},
       chen_stein},
      {"spectra-verify", "brute-force versus closed-form pair-matrix spectra", "p,b,dimension,max_deviation,clusters,match",
       {{"p", "4..12", "list or range of p"}, {"b", "0,0.1,0.25,0.4,0.49", "list of b"}, {"tol", "1e-9", "tolerance"}},
       spectra_verify},
      {"app-interpoint", "maximum interpoint distance pipeline", "replicate,D2,standardized",
       {{"n", "", "dimension of each point"},
        {"p", "", "number of points"},
        {"marginal", "normal", "normal, rademacher, mixture:E or three_point:LOGP:LAMBDA1"},
        {"mode", "gumbel", "gumbel or critical standardization"},
        {"reps", "500", "replicates"},
        {"input", "", "binary matrix file instead of simulation"},
        kSeed,
        kWorkers},
       app_interpoint},
      {"app-corr", "largest sample covariance and correlation pipeline", "replicate,R,M,R_standardized,M_standardized",
       {{"n", "", "observations"},
        {"p", "", "coordinates"},
        {"rho", "0", "common correlation"},
        {"marginal", "normal", "normal, rademacher, mixture:E or three_point:LOGP:LAMBDA1"},
        {"rn-regime", "i", "i, ii, iii, new_i or new_ii"},
        {"mn-regime", "i", "i, ii or iii"},
        {"reps", "500", "replicates"},
        {"input", "", "binary matrix file instead of simulation"},
        kSeed,
        kWorkers},
       app_corr},
      {"fwer", "max-test thresholds and Monte Carlo calibration", "n,alpha,q_alpha,u,r,reps,rejections,rate,half_width",
       {{"n", "", "list or range of n"},
        {"alpha", "0.01,0.05,0.1", "list of levels"},
        {"variant", "standard", "standard or log4pi centering"},
        {"r", "0", "field correlation for calibration"},
        {"reps", "0", "calibration replicates (0: thresholds only)"},
        kSeed,
        kWorkers},
       fwer},
      {"fwer-reject", "pairs exceeding the threshold", "i,j,value",
       {{"observations", "", "CSV of i,j,value rows"},
        {"n", "", "vertices"},
        {"alpha", "", "level"},
        {"u", "", "explicit threshold instead of alpha"},
        {"variant", "standard", "standard or log4pi centering"}},
       fwer_reject},
      {"ks", "Kolmogorov-Smirnov distance", "statistic,n1,n2,location",
       {{"a", "", "CSV sample"},
        {"b", "", "second CSV sample"},
        {"cdf", "", "normal, gumbel or g1"},
        {"column", "", "column name (default: last)"},
        {"column-b", "", "column name in b"},
        {"ecdf", "", "also write x,ecdf of sample a to this path"}},
       ks},
      {"dataset-generate", "write one simulated data matrix", "n,p,rho,marginal,kappa,matrix",
       {{"n", "", "observations"},
        {"p", "", "coordinates"},
        {"rho", "0", "common correlation"},
        {"marginal", "normal", "normal, rademacher, mixture:E or three_point:LOGP:LAMBDA1"},
        {"replicate", "0", "replicate index of the stream"},
        {"matrix", "", "output binary matrix path"},
        kSeed},
       dataset_generate},
  };
  return all;
}

const Command* find_command(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace sefield::cli
