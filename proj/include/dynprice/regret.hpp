#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynprice/demand.hpp"
#include "dynprice/policy_config.hpp"

namespace dynprice {

class UndefinedRegretError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RegretEstimate {
  std::int64_t market_size = 0;
  std::int64_t replications = 0;
  double benchmark = 0.0;     // J^D_n
  double mean_revenue = 0.0;  // average realised revenue
  double revenue_sd = 0.0;    // sample standard deviation of revenue
  double mean_regret = 0.0;   // 1 - mean_revenue / J^D_n
  double std_error = 0.0;     // revenue_sd / (sqrt(reps) J^D_n)
};

/// Seed of replication `rep` at market size n. Policies compared under the
/// same root seed see the same stream per (n, rep) cell.
std::uint64_t replication_seed(std::uint64_t root_seed, std::int64_t market_size, std::int64_t rep);

/// Realised revenue of each replication, ordered by replication id.
std::vector<double> simulate_revenues(const ProblemInstance& instance, const PolicyConfig& policy,
                                      std::int64_t replications, std::uint64_t root_seed,
                                      int workers = 1);

/// Regret from a set of revenues; throws UndefinedRegretError when J^D_n = 0.
RegretEstimate summarize_regret(std::span<const double> revenues, double benchmark,
                                std::int64_t market_size);

RegretEstimate estimate_regret(const ProblemInstance& instance, const PolicyConfig& policy,
                               std::int64_t replications, std::uint64_t root_seed,
                               int workers = 1);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
  std::vector<std::string> warnings;
};

/// OLS of ln(mean_regret) on ln(n). Non-positive regrets are dropped with a
/// warning; fewer than two usable points throws std::domain_error.
LogLogFit fit_loglog(std::span<const RegretEstimate> points);

struct RegretReport {
  std::string policy;
  std::vector<RegretEstimate> per_n;
  LogLogFit fit;
};

/// Regret at each n (the template's market_size is overridden), plus the
/// log-log fit. Needs at least three distinct n values.
RegretReport sweep(const ProblemInstance& instance_template, const PolicyConfig& policy,
                   std::span<const std::int64_t> n_values, std::int64_t replications,
                   std::uint64_t root_seed, int workers = 1);

/// Same, with regret supplied by `estimator` instead of simulation.
RegretReport sweep(const std::string& policy_label, std::span<const std::int64_t> n_values,
                   const std::function<RegretEstimate(std::int64_t)>& estimator);

/// Violations of the harness invariants, one human-readable line each.
std::vector<std::string> check_report(const RegretReport& report);

void write_regret_csv(std::ostream& os, std::span<const RegretReport> reports);
void write_slope_csv(std::ostream& os, std::span<const RegretReport> reports);

}  // namespace dynprice
