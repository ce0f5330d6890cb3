#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dynprice/demand.hpp"
#include "dynprice/policy.hpp"
#include "dynprice/random.hpp"

namespace dynprice {

/// Raised when a policy violates the segment-request contract.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct MarketState {
  std::int64_t initial_inventory = 0;
  std::int64_t remaining_inventory = 0;
  double clock = 0.0;
  double horizon = 1.0;
  double revenue = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t segments_drawn = 0;
  std::optional<double> stockout_time;

  static MarketState start(const ProblemInstance& instance, std::uint64_t seed);
};

struct SegmentOutcome {
  std::int64_t demand = 0;  // uncapped Poisson draw
  std::int64_t sales = 0;   // min(demand, stock)
};

/// Exact Poisson draw; zero for a non-positive mean.
std::int64_t sample_poisson(double mean, SplitMix64& rng);

/// Sells at a constant price for `duration`. Demand is Poisson with mean
/// n * lambda(p) * duration and is capped by remaining stock; a stockout is
/// stamped at the segment end.
SegmentOutcome simulate_segment(MarketState& state, const DemandModel& model,
                                std::int64_t market_size, Price price, double duration);

struct Segment {
  Price price;
  double start = 0.0;
  double duration = 0.0;
  std::int64_t demand = 0;
  std::int64_t sales = 0;
};

struct SimulationTrace {
  std::vector<Segment> segments;
  double terminal_revenue = 0.0;
  std::optional<double> stockout_time;
  std::int64_t initial_inventory = 0;
  std::int64_t remaining_inventory = 0;

  std::int64_t units_sold() const;
};

/// Drives `policy` over [0, T]. Identical (instance, policy, seed) yields a
/// bit-identical trace.
SimulationTrace run_policy(const ProblemInstance& instance, PricingPolicy& policy,
                           std::uint64_t seed);

/// Column header of the trace CSV.
void write_trace_csv_header(std::ostream& os);
void write_trace_csv_rows(std::ostream& os, std::int64_t rep_id, const SimulationTrace& trace);

struct TailCheck {
  double threshold = 0.0;         // r_n * eps_n
  double upper_frequency = 0.0;   // P(N - mean > threshold)
  double lower_frequency = 0.0;   // P(N - mean < -threshold)
  double bound = 0.0;             // C / n^eta
};

/// Monte Carlo frequency of Poisson deviations beyond
/// r_n * eps_n, eps_n = 2 sqrt(eta M log n / r_n).
TailCheck poisson_tail_check(double mean_rate, double scale, double eta, double n,
                             double rate_bound, std::int64_t reps, std::uint64_t seed,
                             double constant = 10.0);

}  // namespace dynprice
