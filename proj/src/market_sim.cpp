#include "dynprice/market_sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "dynprice/csv.hpp"

namespace dynprice {
namespace {

constexpr double kTimeSlack = 1e-9;

std::string format_price(Price p) { return p.is_cutoff() ? "inf" : format_double(p.value()); }

}  // namespace

MarketState MarketState::start(const ProblemInstance& instance, std::uint64_t seed) {
  instance.validate();
  MarketState s;
  s.initial_inventory = instance.scaled_inventory();
  s.remaining_inventory = s.initial_inventory;
  s.horizon = instance.horizon;
  s.seed = seed;
  return s;
}

std::int64_t sample_poisson(double mean, SplitMix64& rng) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(rng);
}

SegmentOutcome simulate_segment(MarketState& state, const DemandModel& model,
                                std::int64_t market_size, Price price, double duration) {
  if (duration < 0.0 || !std::isfinite(duration))
    throw std::domain_error("simulate_segment: negative duration");
  if (state.clock + duration > state.horizon * (1.0 + 1e-12) + 1e-12)
    throw std::domain_error("simulate_segment: segment runs past the horizon");

  SegmentOutcome out;
  if (duration == 0.0) return out;

  const double lambda = rate(model, price);
  SplitMix64 rng(derive_seed(state.seed, {state.segments_drawn}));
  ++state.segments_drawn;
  out.demand = sample_poisson(static_cast<double>(market_size) * lambda * duration, rng);
  out.sales = std::min(out.demand, state.remaining_inventory);

  state.remaining_inventory -= out.sales;
  state.revenue += price.value() * static_cast<double>(out.sales);
  state.clock = std::min(state.horizon, state.clock + duration);
  if (state.remaining_inventory == 0 && out.sales > 0 && !state.stockout_time)
    state.stockout_time = state.clock;
  return out;
}

std::int64_t SimulationTrace::units_sold() const {
  std::int64_t total = 0;
  for (const auto& s : segments) total += s.sales;
  return total;
}

SimulationTrace run_policy(const ProblemInstance& instance, PricingPolicy& policy,
                           std::uint64_t seed) {
  MarketState state = MarketState::start(instance, seed);
  const DemandModel& model = instance.demand;
  const double horizon = instance.horizon;
  SimulationTrace trace;
  trace.initial_inventory = state.initial_inventory;

  auto finished = [&] { return horizon - state.clock <= kTimeSlack * horizon; };
  auto fill_with_cutoff = [&] {
    if (!finished())
      trace.segments.push_back({Price::cutoff(), state.clock, horizon - state.clock, 0, 0});
    state.clock = horizon;
  };

  std::optional<std::int64_t> last_sales;
  while (!finished()) {
    if (state.remaining_inventory == 0) {
      fill_with_cutoff();
      break;
    }
    const auto request = policy.next_segment(last_sales);
    if (!request) {
      fill_with_cutoff();
      break;
    }
    const Price price = request->price;
    if (!price.is_cutoff() && !model.contains(price.value())) {
      std::ostringstream os;
      os << policy.name() << " requested price " << price.value() << " outside ["
         << model.price_floor() << ", " << model.price_ceil() << "]";
      throw ProtocolError(os.str());
    }
    if (!(request->duration >= 0.0) || !std::isfinite(request->duration))
      throw ProtocolError(policy.name() + " requested a negative or non-finite duration");
    if (state.clock + request->duration > horizon * (1.0 + kTimeSlack))
      throw ProtocolError(policy.name() + " requested time past the horizon");

    const double duration = std::min(request->duration, horizon - state.clock);
    const double start = state.clock;
    const auto outcome = simulate_segment(state, model, instance.market_size, price, duration);
    if (duration > 0.0)
      trace.segments.push_back({price, start, duration, outcome.demand, outcome.sales});
    if (finished()) state.clock = horizon;
    last_sales = outcome.sales;
  }

  trace.terminal_revenue = state.revenue;
  trace.stockout_time = state.stockout_time;
  trace.remaining_inventory = state.remaining_inventory;
  return trace;
}

void write_trace_csv_header(std::ostream& os) {
  os << "rep_id,seg_index,price,t_start,duration,sales,revenue_cum\n";
}

void write_trace_csv_rows(std::ostream& os, std::int64_t rep_id, const SimulationTrace& trace) {
  double revenue = 0.0;
  std::size_t index = 0;
  for (const auto& s : trace.segments) {
    revenue += s.price.value() * static_cast<double>(s.sales);
    os << rep_id << ',' << index++ << ',' << format_price(s.price) << ','
       << format_double(s.start) << ',' << format_double(s.duration) << ',' << s.sales << ','
       << format_double(revenue) << '\n';
  }
}

TailCheck poisson_tail_check(double mean_rate, double scale, double eta, double n,
                             double rate_bound, std::int64_t reps, std::uint64_t seed,
                             double constant) {
  if (reps < 1) throw std::invalid_argument("poisson_tail_check: reps must be positive");
  if (mean_rate < 0.0 || mean_rate > rate_bound)
    throw std::invalid_argument("poisson_tail_check: mean rate must lie in [0, M]");
  if (!(scale > 0.0) || !(n > 1.0))
    throw std::invalid_argument("poisson_tail_check: need r_n > 0 and n > 1");

  TailCheck out;
  const double eps = 2.0 * std::sqrt(eta) * std::sqrt(rate_bound) * std::sqrt(std::log(n)) /
                     std::sqrt(scale);
  out.threshold = scale * eps;
  out.bound = constant / std::pow(n, eta);

  const double mean = mean_rate * scale;
  std::int64_t upper = 0;
  std::int64_t lower = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    SplitMix64 rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    const double dev = static_cast<double>(sample_poisson(mean, rng)) - mean;
    if (dev > out.threshold) ++upper;
    if (dev < -out.threshold) ++lower;
  }
  out.upper_frequency = static_cast<double>(upper) / static_cast<double>(reps);
  out.lower_frequency = static_cast<double>(lower) / static_cast<double>(reps);
  return out;
}

}  // namespace dynprice
