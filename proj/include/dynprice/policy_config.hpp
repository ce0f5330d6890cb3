#pragma once

#include <memory>
#include <optional>
#include <string>

#include "dynprice/demand.hpp"
#include "dynprice/dpa.hpp"
#include "dynprice/policy.hpp"
#include "dynprice/schedule.hpp"

namespace dynprice {

enum class PolicyKind {
  Dpa,
  Dpa2,
  Clairvoyant,
  SinglePhase,
  Fixed,      // constant price; infinity means the cutoff price
  Synthetic,  // exact regret c / sqrt(n), for harness checks; not simulatable
};

std::string to_string(PolicyKind kind);
PolicyKind parse_policy_kind(const std::string& text);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::Dpa;
  double delta = 0.49;
  LogMode log_mode = LogMode::Practical;
  Step3Interval step3_interval = Step3Interval::LastInterval;
  std::optional<double> learn_fraction;  // single_phase; default n^{-1/4}
  std::optional<int> grid_size;          // single_phase; default ceil(n^{1/4})
  double fixed_price = 0.0;
  double synthetic_constant = 1.0;

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;

  /// Validates the fields the chosen policy reads.
  void validate() const;
  /// Short label used in CSV rows, e.g. "fixed(1.5)".
  std::string label() const;
};

/// Instantiates a fresh policy for one replication.
std::unique_ptr<PricingPolicy> make_policy(const PolicyConfig& config,
                                           const ProblemInstance& instance);

}  // namespace dynprice
