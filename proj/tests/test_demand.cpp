#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dynprice/demand.hpp"

using namespace dynprice;

namespace {
const double kLn4 = std::log(4.0);
DemandModel lin() { return DemandModel::linear(30, 3, 0.1, 10); }
DemandModel expo() { return DemandModel::exponential(80, 0.5, 0.1, 10); }
}  // namespace

TEST_CASE("rate oracles") {
  CHECK(rate(lin(), Price(5.0)) == 15.0);
  CHECK(rate(expo(), Price(2.0 * kLn4)) == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(rate(lin(), Price::cutoff()) == 0.0);
  CHECK(rate(expo(), Price::cutoff()) == 0.0);
  CHECK_THROWS_AS(rate(lin(), Price(10.5)), std::domain_error);
  CHECK_THROWS_AS(rate(lin(), Price(0.05)), std::domain_error);
}

TEST_CASE("revenue maximising price") {
  CHECK(std::abs(solve_pu(lin()) - 5.0) < 1e-8);
  CHECK(std::abs(solve_pu(expo()) - 2.0) < 1e-8);
  CHECK(std::abs(solve_pu(DemandModel::worst_case(0.5)) - 1.0) < 1e-8);
}

TEST_CASE("inventory depleting price") {
  CHECK(std::abs(solve_pc(expo(), 20, 1) - 2.0 * kLn4) < 1e-8);
  CHECK(std::abs(solve_pc(lin(), 20, 1) - 10.0 / 3.0) < 1e-8);
  // lambda(p_hi) = 27 > x/T = 25 on [0.1, 1]: clamp at the upper bound
  CHECK(solve_pc(DemandModel::linear(30, 3, 0.1, 1.0), 25, 1) == 1.0);
  CHECK_THROWS(solve_pc(lin(), 0, 1));
}

TEST_CASE("deterministic price and value") {
  CHECK(std::abs(deterministic_price(lin(), 20, 1) - 5.0) < 1e-8);
  CHECK(std::abs(deterministic_price(expo(), 20, 1) - 2.0 * kLn4) < 1e-8);
  CHECK(std::abs(deterministic_price(DemandModel::worst_case(2.0 / 3.0), 2, 1) - 7.0 / 8.0) < 1e-8);
  CHECK(std::abs(deterministic_value(lin(), 20, 1) - 75.0) < 1e-6);
  CHECK(std::abs(deterministic_value(expo(), 20, 1) - 40.0 * kLn4) < 1e-6);
  CHECK(deterministic_value(lin(), 0, 1) == 0.0);
}

TEST_CASE("p_c solves lambda(p) = x/T when the target is attainable") {
  for (double x : {5.0, 12.5, 20.0, 29.0}) {
    const double p = solve_pc(lin(), x, 1);
    CHECK(std::abs(lin().rate_at(p) - x) < 1e-6);
  }
}

TEST_CASE("scaling regime: value is linear in n, price does not move") {
  for (const auto& m : {lin(), expo()}) {
    const double v1 = deterministic_value(m, 20, 1, 1);
    for (std::int64_t n : {10, 1000, 100000}) CHECK(deterministic_value(m, 20, 1, n) == n * v1);
  }
  ProblemInstance inst{lin(), 20, 1, 1000};
  CHECK(inst.scaled_inventory() == 20000);
  inst.inventory = 0.0125;
  CHECK(inst.scaled_inventory() == 12);
}

TEST_CASE("inverse demand is consistent with the rate") {
  for (const auto& m : {lin(), expo(), DemandModel::logit(-1, 0.5, 0.1, 10),
                        DemandModel::worst_case(0.4)}) {
    for (int k = 0; k <= 50; ++k) {
      const double p = m.price_floor() + (m.price_ceil() - m.price_floor()) * k / 50.0;
      CHECK(std::abs(m.inverse(m.rate_at(p)) - p) < 1e-9);
    }
  }
}

TEST_CASE("sampled r'' of the revenue-rate curve lies in [-m_L, -m_U]") {
  for (const auto& m : {lin(), expo(), DemandModel::logit(-1, 0.5, 0.1, 10),
                        DemandModel::worst_case(1.0 / 3.0), DemandModel::worst_case(2.0 / 3.0)}) {
    const auto& c = m.constants();
    const double lo = m.rate_at(m.price_ceil());
    const double hi = m.rate_at(m.price_floor());
    const double h = (hi - lo) * 1e-3;
    for (int k = 1; k < 100; ++k) {
      const double l = lo + (hi - lo) * k / 100.0;
      const double d2 = (m.revenue_of_rate(l + h) - 2 * m.revenue_of_rate(l) +
                         m.revenue_of_rate(l - h)) / (h * h);
      const double tol = 1e-4 * std::max(1.0, c.curvature_upper);
      CHECK(d2 >= -c.curvature_upper - tol);
      CHECK(d2 <= -c.curvature_lower + tol);
    }
    for (int k = 0; k <= 100; ++k) {
      const double p = m.price_floor() + (m.price_ceil() - m.price_floor()) * k / 100.0;
      CHECK(m.rate_at(p) >= 0.0);
      CHECK(m.rate_at(p) <= c.rate_bound + 1e-12);
    }
  }
}

TEST_CASE("linear family constants") {
  const auto c = lin().constants();
  CHECK(c.rate_bound == doctest::Approx(29.7));
  CHECK(c.curvature_upper == doctest::Approx(2.0 / 3.0));
  CHECK(c.curvature_lower == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("validation rejects curves that are not strictly decreasing") {
  CHECK_THROWS_AS(DemandModel::linear(30, -3, 0.1, 10), std::invalid_argument);
  CHECK_THROWS_AS(DemandModel::linear(30, 3, 0.1, 20), std::invalid_argument);  // negative rate
  CHECK_THROWS_AS(DemandModel::linear(30, 3, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(DemandModel::tabulated({{0, 5}, {1, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(DemandModel(TabulatedDemand{{{0, 5}, {1, 4}}}, 0, 1), std::invalid_argument);
}

TEST_CASE("tabulated curves interpolate and may peak at a kink") {
  const auto m = DemandModel::tabulated({{0.1, 17.9}, {6, 12}, {10, 2}});
  CHECK(m.rate_at(6) == doctest::Approx(12));
  CHECK(m.rate_at(8) == doctest::Approx(7));
  CHECK(std::abs(solve_pu(m) - 6.0) < 1e-4);
  CHECK(solve_pc(m, 20, 1) == 0.1);
}

TEST_CASE("non-unimodal revenue falls back to a dense scan") {
  // revenue p * rate has two local maxima; the global one is near p = 8
  const auto m = DemandModel::tabulated({{0, 10}, {2, 9}, {4, 3}, {8, 2.9}, {10, 0.5}});
  const double pu = solve_pu(m);
  CHECK(std::abs(pu - 8.0) < 1e-3);
}

TEST_CASE("advertisement transform") {
  // lambda(a) = a on a in [0, 10] at p = 10: lambda~(w) = 10 - w on [0, 10]
  const auto m1 = advertisement_transform(10, AffineIntensity{0, 1, 0, 10});
  CHECK(m1.price_floor() == 0.0);
  CHECK(m1.price_ceil() == 10.0);
  CHECK(m1.rate_at(3) == doctest::Approx(7));

  // lambda(a) = 30 - 3(10 - a) gives lambda~(w) = 30 - 3w
  const auto m2 = advertisement_transform(10, AffineIntensity{0, 3, 1, 9.5});
  for (double w : {0.5, 2.0, 5.0, 9.0}) CHECK(m2.rate_at(w) == doctest::Approx(30 - 3 * w));

  CHECK_THROWS_AS(advertisement_transform(10, AffineIntensity{4, 0, 0, 10}),
                  std::invalid_argument);
  CHECK_THROWS_AS(advertisement_transform(
                      10, SampledIntensity{{{0, 4}, {5, 4}}, RegularityConstants{4, 1, 1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("problem instance validation") {
  CHECK_THROWS(ProblemInstance{lin(), -1, 1, 10}.validate());
  CHECK_THROWS(ProblemInstance{lin(), 20, 0, 10}.validate());
  CHECK_THROWS(ProblemInstance{lin(), 20, 1, 0}.validate());
  CHECK_NOTHROW(ProblemInstance{lin(), 20, 1, 10}.validate());
}
