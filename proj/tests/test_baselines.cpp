#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dynprice/baselines.hpp"
#include "dynprice/market_sim.hpp"

using namespace dynprice;

TEST_CASE("single-phase structure: 10 short segments then one long one") {
  const ProblemInstance inst{DemandModel::linear(30, 3, 0.1, 10), 20, 1, 1000};
  SinglePhaseGridPolicy p(SellerView::of(inst), 0.1, 10);
  const auto t = run_policy(inst, p, 3);
  REQUIRE(t.segments.size() == 11);
  for (int i = 0; i < 10; ++i) CHECK(t.segments[i].duration == doctest::Approx(0.01));
  CHECK(t.segments[10].duration == doctest::Approx(0.9));
  CHECK(p.grid().front() == 0.1);
  CHECK(p.grid().back() == 10.0);
  REQUIRE(p.applied_price().has_value());
  CHECK(t.segments[10].price.value() == *p.applied_price());
}

TEST_CASE("single-phase defaults") {
  CHECK(SinglePhaseGridPolicy::default_learn_fraction(10000) == doctest::Approx(0.1));
  CHECK(SinglePhaseGridPolicy::default_grid_size(10000) == 10);
  CHECK(SinglePhaseGridPolicy::default_grid_size(1) == 2);
  const ProblemInstance inst{DemandModel::linear(30, 3, 0.1, 10), 20, 1, 100};
  CHECK_THROWS(SinglePhaseGridPolicy(SellerView::of(inst), 0.0, 10));
  CHECK_THROWS(SinglePhaseGridPolicy(SellerView::of(inst), 0.5, 1));
}

TEST_CASE("single-phase estimate approaches p^D with a huge market") {
  const ProblemInstance inst{DemandModel::linear(30, 3, 1, 9), 20, 1, 100000000};
  SinglePhaseGridPolicy p(SellerView::of(inst), 0.1, 9);
  run_policy(inst, p, 1);
  CHECK(*p.applied_price() == 5.0);
}

TEST_CASE("clairvoyant prices") {
  const double ln4 = std::log(4.0);
  struct Case {
    ProblemInstance inst;
    double price;
  };
  const Case cases[] = {
      {{DemandModel::linear(30, 3, 0.1, 10), 20, 1, 100}, 5.0},
      {{DemandModel::exponential(80, 0.5, 0.1, 10), 20, 1, 100}, 2 * ln4},
      {{DemandModel::worst_case(0.5), 2, 1, 100}, 1.0},
  };
  for (const auto& c : cases) {
    auto p = clairvoyant_policy(c.inst);
    const auto t = run_policy(c.inst, *p, 1);
    CHECK(std::abs(t.segments.at(0).price.value() - c.price) < 1e-8);
    CHECK(t.segments.at(0).start == 0.0);
  }
}
