#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "dynprice/demand.hpp"
#include "dynprice/market_sim.hpp"
#include "dynprice/policy_config.hpp"

namespace dynprice {

/// Member z of the linear family lambda(p; z) = 1/2 + z - z p on [1/2, 3/2],
/// with x = 2 and T = 1.
struct WorstCaseInstance {
  static constexpr double kZMin = 1.0 / 3.0;
  static constexpr double kZMax = 2.0 / 3.0;
  static constexpr double kZ0 = 0.5;
  static constexpr double kInventory = 2.0;
  static constexpr double kHorizon = 1.0;

  double z = kZ0;

  /// 1/2 + 1/(4 n^{1/4}).
  static double z1(std::int64_t n);
  static double rate(double p, double z) { return 0.5 + z - z * p; }

  ProblemInstance instance(std::int64_t n) const;
};

/// (1 + 2z) / (4z); std::domain_error outside [1/3, 2/3].
double pD_of_z(double z);

struct KlPath {
  double value = 0.0;
  bool infinite = false;  // lambda_z vanished where lambda_0 did not
};

/// Pathwise KL integral n * sum duration * [l0 ln(l0/lz) + lz - l0] for one
/// trace. Cutoff segments contribute nothing.
KlPath kl_path(const SimulationTrace& trace, std::int64_t n, double z0, double z);

/// 1 / (6912 sqrt(n)).
double regret_lower_bound(double n);

struct LowerBoundReport {
  std::string policy;
  std::int64_t n = 0;
  std::int64_t replications = 0;
  double k_hat = 0.0;
  double k_se = 0.0;
  double r_hat_z0 = 0.0;
  double r_se_z0 = 0.0;
  double r_hat_z1 = 0.0;
  double r_se_z1 = 0.0;
  double lemma14_lhs = 0.0;  // K_hat
  double lemma14_rhs = 0.0;  // 24 n (z0 - z1)^2 R_hat(z0)
  double lemma16_lhs = 0.0;  // R_hat(z0) + R_hat(z1)
  double lemma16_rhs = 0.0;  // lower bound * exp(-K_hat)
  bool lemma14_pass = false;
  bool lemma16_pass = false;
  bool infinite_divergence = false;

  bool pass() const { return lemma14_pass && lemma16_pass; }
};

/// Estimates K_hat from traces generated under z0 and the regret of the same
/// policy under z0 and z1 (paired seeds), then tests both inequalities with a
/// tolerance of `se_multiple` combined standard errors.
///
/// A clairvoyant config means the fixed price p^D(z0) under both parameters.
LowerBoundReport check_lemma14(const PolicyConfig& policy, std::int64_t n,
                               std::int64_t replications, std::uint64_t root_seed,
                               int workers = 1, double se_multiple = 2.0);

void write_lower_bound_csv(std::ostream& os, std::span<const LowerBoundReport> reports);

}  // namespace dynprice
