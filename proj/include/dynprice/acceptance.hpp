#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dynprice {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  int workers = 1;
  std::int64_t replications = 1000;  // Monte Carlo cells of the regret criteria
  std::int64_t property_runs = 200;  // runs of the property-based criteria
  std::vector<int> only;             // empty runs all nine
};

/// Runs the acceptance criteria in order. Exceptions inside a criterion turn
/// into a FAIL with the message as detail.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS [3] ordering ... (12.3 s)".
std::string format_result(const CriterionResult& result);

/// Piecewise-linear test curve with its revenue maximum at a kink.
struct KinkedInstance {
  static constexpr double kKink = 6.0;
  static constexpr double kInventory = 20.0;
  static constexpr double kHorizon = 1.0;
  static const char* spec() { return "tabulated 0.1:17.9 6:12 10:2"; }
};

}  // namespace dynprice
