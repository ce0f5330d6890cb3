#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynprice/demand.hpp"
#include "dynprice/policy_config.hpp"

namespace dynprice {

/// Bad configuration value; the message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Solve, Run, Sweep, LowerBound, Check };

std::string to_string(Command c);
Command parse_command(const std::string& text);

/// Builds a demand model from a spec such as "linear 30 3",
/// "exponential 80 0.5", "logit 0 1", "worstcase 0.5" or
/// "tabulated 0.1:17.9 6:12 10:2". The worst-case family ignores the bounds
/// and uses [1/2, 3/2]; tabulated curves use their first and last samples.
DemandModel parse_demand(const std::string& spec, double price_floor, double price_ceil);

struct ExperimentConfig {
  Command command = Command::Solve;
  std::string demand = "linear 30 3";
  double price_floor = 0.1;
  double price_ceil = 10.0;
  double inventory = 20.0;
  double horizon = 1.0;
  std::vector<std::int64_t> market_sizes = {10, 100, 1000, 10000, 100000};
  std::vector<PolicyKind> policies = {PolicyKind::Dpa};
  PolicyConfig policy;  // parameters shared by every entry of `policies`
  std::int64_t replications = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;            // output directory; empty writes to stdout
  std::vector<int> criteria;  // check: subset of acceptance criteria, empty = all
  bool check = false;         // fail the command when an invariant is violated

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  std::vector<PolicyConfig> policy_configs() const;
  ProblemInstance instance(std::int64_t n) const;
};

/// key = value lines with [demand], [policy] and [run] sections; '#' starts a
/// comment. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string print_config(const ExperimentConfig& config);

/// FNV-1a of the printed config, ignoring `workers` and `out`.
std::string config_hash(const ExperimentConfig& config);

}  // namespace dynprice
