#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dynprice/dpa.hpp"
#include "dynprice/market_sim.hpp"
#include "dynprice/random.hpp"

using namespace dynprice;

namespace {

ProblemInstance linear_instance(std::int64_t n) {
  return {DemandModel::linear(30, 3, 0.1, 10), 20, 1, n};
}
ProblemInstance exponential_instance(std::int64_t n) {
  return {DemandModel::exponential(80, 0.5, 0.1, 10), 20, 1, n};
}

void check_feasible(const SimulationTrace& t, const ProblemInstance& inst) {
  double total = 0.0;
  for (const auto& s : t.segments) {
    if (!s.price.is_cutoff()) {
      CHECK(s.price.value() >= inst.demand.price_floor());
      CHECK(s.price.value() <= inst.demand.price_ceil());
    }
    total += s.duration;
  }
  CHECK(total == doctest::Approx(inst.horizon).epsilon(1e-12));
}

}  // namespace

TEST_CASE("step-2 shrink oracle") {
  const PriceInterval feasible{0.1, 10};
  const auto next = shrink_unconstrained(0.5, {0.4, 0.6}, 4, 9.0, feasible);
  CHECK(next.lo == doctest::Approx(0.35));
  CHECK(next.hi == doctest::Approx(0.8));
  const auto clipped = shrink_unconstrained(0.5, {0.4, 0.6}, 4, 9.0, {0.4, 0.7});
  CHECK(clipped.lo == doctest::Approx(0.4));
  CHECK(clipped.hi == doctest::Approx(0.7));
  const auto sym = shrink_symmetric(0.5, {0.4, 0.6}, 4, 9.0, feasible);
  CHECK(sym.lo == doctest::Approx(0.275));
  CHECK(sym.hi == doctest::Approx(0.725));
}

TEST_CASE("transition test threshold") {
  // granularity 0.05, 2 sqrt(9) = 6 steps = 0.3
  CHECK_FALSE(constrained_price_dominates(0.79, 0.5, {0.4, 0.6}, 4, 9.0));
  CHECK(constrained_price_dominates(0.81, 0.5, {0.4, 0.6}, 4, 9.0));
}

TEST_CASE("grid of left endpoints") {
  const auto g = grid_prices({1, 2}, 4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 1.0);
  CHECK(g[3] == doctest::Approx(1.75));
}

TEST_CASE("first DPA request is the left end of the range for one sub-period") {
  const auto inst = linear_instance(100000);
  DpaPolicy p(SellerView::of(inst), {});
  const auto r = p.next_segment(std::nullopt);
  REQUIRE(r.has_value());
  CHECK(r->price.value() == 0.1);
  const auto& s = p.schedule().unconstrained;
  CHECK(r->duration == doctest::Approx(s.tau[0] / s.kappa[0]));
}

TEST_CASE("first DPA2 request matches its schedule") {
  const auto inst = linear_instance(100000);
  Dpa2Policy p(SellerView::of(inst), 0.49, LogMode::Practical);
  const auto r = p.next_segment(std::nullopt);
  REQUIRE(r.has_value());
  CHECK(r->price.value() == 0.1);
  CHECK(r->duration == doctest::Approx(p.schedule().tau[0] / p.schedule().kappa[0]));
  CHECK(p.schedule().count() <= 8);
}

TEST_CASE("DPA run properties") {
  for (auto make : {linear_instance, exponential_instance}) {
    for (std::int64_t n : {100, 10000, 100000}) {
      for (auto mode : {Step3Interval::FullInterval, Step3Interval::LastInterval}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          const auto inst = make(n);
          DpaPolicy p(SellerView::of(inst), {0.49, LogMode::Practical, mode});
          const auto t = run_policy(inst, p, seed);
          check_feasible(t, inst);
          CHECK(t.initial_inventory == t.remaining_inventory + t.units_sold());

          const auto& d = p.diagnostics();
          for (const auto& it : d.iterations) {
            CHECK(it.interval.lo >= inst.demand.price_floor() - 1e-12);
            CHECK(it.interval.hi <= inst.demand.price_ceil() + 1e-12);
          }
          const double log_n = std::log(double(n));
          for (std::size_t i = 1; i < d.iterations.size(); ++i) {
            const auto& a = d.iterations[i - 1];
            const auto& b = d.iterations[i];
            if (a.track == b.track && log_n / a.kappa < 1.0)
              CHECK(b.interval.width() < a.interval.width());
          }
          if (d.applied_price && d.estimate_before_adjustment && !d.entered_step3)
            CHECK(*d.applied_price >= *d.estimate_before_adjustment);
        }
      }
    }
  }
}

TEST_CASE("DPA is deterministic given the seed") {
  const auto inst = exponential_instance(10000);
  DpaPolicy a(SellerView::of(inst), {});
  DpaPolicy b(SellerView::of(inst), {});
  const auto ta = run_policy(inst, a, 17);
  const auto tb = run_policy(inst, b, 17);
  REQUIRE(ta.segments.size() == tb.segments.size());
  for (std::size_t i = 0; i < ta.segments.size(); ++i) {
    CHECK(ta.segments[i].price == tb.segments[i].price);
    CHECK(ta.segments[i].sales == tb.segments[i].sales);
  }
  CHECK(ta.terminal_revenue == tb.terminal_revenue);
}

TEST_CASE("DPA2 run properties") {
  const ProblemInstance inst{DemandModel::tabulated({{0.1, 17.9}, {6, 12}, {10, 2}}), 20, 1, 10000};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Dpa2Policy p(SellerView::of(inst), 0.49, LogMode::Practical);
    const auto t = run_policy(inst, p, seed);
    check_feasible(t, inst);
    CHECK(p.diagnostics().iterations.size() <= 8);
    for (const auto& it : p.diagnostics().iterations) CHECK(it.track == Track::Single);
  }
}

TEST_CASE("step-3 restart option parsing") {
  CHECK(parse_step3_interval(to_string(Step3Interval::FullInterval)) == Step3Interval::FullInterval);
  CHECK(parse_step3_interval(to_string(Step3Interval::LastInterval)) == Step3Interval::LastInterval);
  CHECK_THROWS(parse_step3_interval("middle"));
}
