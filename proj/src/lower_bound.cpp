#include "dynprice/lower_bound.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "dynprice/csv.hpp"
#include "dynprice/parallel.hpp"
#include "dynprice/regret.hpp"

namespace dynprice {

double WorstCaseInstance::z1(std::int64_t n) {
  if (n < 1) throw std::domain_error("z1: n must be positive");
  return 0.5 + 1.0 / (4.0 * std::pow(static_cast<double>(n), 0.25));
}

ProblemInstance WorstCaseInstance::instance(std::int64_t n) const {
  return ProblemInstance{DemandModel::worst_case(z), kInventory, kHorizon, n};
}

double pD_of_z(double z) {
  if (!(z >= WorstCaseInstance::kZMin - 1e-15 && z <= WorstCaseInstance::kZMax + 1e-15))
    throw std::domain_error("pD_of_z: z must lie in [1/3, 2/3]");
  return (1.0 + 2.0 * z) / (4.0 * z);
}

KlPath kl_path(const SimulationTrace& trace, std::int64_t n, double z0, double z) {
  KlPath out;
  double sum = 0.0;
  for (const auto& s : trace.segments) {
    if (s.price.is_cutoff() || s.duration == 0.0) continue;
    const double p = s.price.value();
    if (p < 0.5 - 1e-12 || p > 1.5 + 1e-12)
      throw std::domain_error("kl_path: trace price outside [1/2, 3/2]");
    const double l0 = WorstCaseInstance::rate(p, z0);
    const double lz = WorstCaseInstance::rate(p, z);
    if (l0 <= 0.0) {
      sum += s.duration * lz;
      continue;
    }
    if (lz <= 0.0) {
      out.infinite = true;
      continue;
    }
    // l0 == lz gives an exact zero, which keeps p = 1 segments at 0.
    if (l0 == lz) continue;
    sum += s.duration * (l0 * std::log(l0 / lz) + lz - l0);
  }
  out.value = out.infinite ? INFINITY : static_cast<double>(n) * sum;
  return out;
}

double regret_lower_bound(double n) {
  if (!(n >= 1.0)) throw std::domain_error("regret_lower_bound: n must be >= 1");
  return 1.0 / (6912.0 * std::sqrt(n));
}

namespace {

struct Sample {
  double mean = 0.0;
  double se = 0.0;
};

Sample mean_and_se(const std::vector<double>& v) {
  const double m = static_cast<double>(v.size());
  Sample s;
  for (double x : v) s.mean += x;
  s.mean /= m;
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.se = std::sqrt(ss / (m - 1.0) / m);
  return s;
}

}  // namespace

LowerBoundReport check_lemma14(const PolicyConfig& policy, std::int64_t n,
                               std::int64_t replications, std::uint64_t root_seed, int workers,
                               double se_multiple) {
  if (replications < 2) throw std::invalid_argument("check_lemma14: replications must be >= 2");
  policy.validate();

  const double z0 = WorstCaseInstance::kZ0;
  const double z1 = WorstCaseInstance::z1(n);
  const ProblemInstance at_z0 = WorstCaseInstance{z0}.instance(n);
  const ProblemInstance at_z1 = WorstCaseInstance{z1}.instance(n);

  PolicyConfig run_config = policy;
  if (policy.kind == PolicyKind::Clairvoyant) {
    run_config.kind = PolicyKind::Fixed;
    run_config.fixed_price = pD_of_z(z0);
  }

  const auto count = static_cast<std::size_t>(replications);
  std::vector<double> kl(count), revenue0(count);
  std::vector<char> infinite(count, 0);
  parallel_for(replications, workers, [&](std::int64_t rep) {
    auto p = make_policy(run_config, at_z0);
    const auto trace = run_policy(at_z0, *p, replication_seed(root_seed, n, rep));
    const auto k = kl_path(trace, n, z0, z1);
    kl[static_cast<std::size_t>(rep)] = k.value;
    infinite[static_cast<std::size_t>(rep)] = k.infinite;
    revenue0[static_cast<std::size_t>(rep)] = trace.terminal_revenue;
  });
  const auto revenue1 = simulate_revenues(at_z1, run_config, replications, root_seed, workers);

  LowerBoundReport r;
  r.policy = policy.label();
  r.n = n;
  r.replications = replications;
  for (char c : infinite) r.infinite_divergence = r.infinite_divergence || c;

  const auto k = mean_and_se(kl);
  const auto reg0 = summarize_regret(revenue0, deterministic_value(at_z0), n);
  const auto reg1 = summarize_regret(revenue1, deterministic_value(at_z1), n);
  r.k_hat = k.mean;
  r.k_se = k.se;
  r.r_hat_z0 = reg0.mean_regret;
  r.r_se_z0 = reg0.std_error;
  r.r_hat_z1 = reg1.mean_regret;
  r.r_se_z1 = reg1.std_error;

  const double factor = 24.0 * static_cast<double>(n) * (z0 - z1) * (z0 - z1);
  r.lemma14_lhs = r.k_hat;
  r.lemma14_rhs = factor * r.r_hat_z0;
  const double se14 = std::hypot(r.k_se, factor * r.r_se_z0);
  r.lemma14_pass = !r.infinite_divergence && r.lemma14_lhs <= r.lemma14_rhs + se_multiple * se14;

  r.lemma16_lhs = r.r_hat_z0 + r.r_hat_z1;
  r.lemma16_rhs = regret_lower_bound(static_cast<double>(n)) * std::exp(-r.k_hat);
  const double se16 = std::hypot(r.r_se_z0, r.r_se_z1);
  r.lemma16_pass = r.lemma16_lhs >= r.lemma16_rhs - se_multiple * se16;
  return r;
}

void write_lower_bound_csv(std::ostream& os, std::span<const LowerBoundReport> reports) {
  os << "policy,n,K_hat,K_se,R_hat_z0,R_hat_z1,lemma14_lhs,lemma14_rhs,lemma16_lhs,lemma16_rhs,"
        "pass\n";
  for (const auto& r : reports) {
    os << r.policy << ',' << r.n << ',' << format_double(r.k_hat) << ',' << format_double(r.k_se)
       << ',' << format_double(r.r_hat_z0) << ',' << format_double(r.r_hat_z1) << ','
       << format_double(r.lemma14_lhs) << ',' << format_double(r.lemma14_rhs) << ','
       << format_double(r.lemma16_lhs) << ',' << format_double(r.lemma16_rhs) << ','
       << (r.pass() ? "true" : "false") << '\n';
  }
}

}  // namespace dynprice
