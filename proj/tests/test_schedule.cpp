#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dynprice/schedule.hpp"

using namespace dynprice;

TEST_CASE("iteration caps at delta = 0.49") {
  CHECK(max_iterations_unconstrained(0.49) == 7);
  CHECK(max_iterations_constrained(0.49) == 8);
}

TEST_CASE("first-period oracles at n = 1e5") {
  const auto s = build_schedule(100000, 0.49, LogMode::Practical);
  CHECK(s.unconstrained.kappa.at(0) == 37);
  CHECK(s.unconstrained.tau.at(0) == doctest::Approx(3.546e-3).epsilon(1e-3));
  CHECK(s.unconstrained.tau.at(0) == doctest::Approx(std::pow(1e5, -0.49)));
  CHECK(s.constrained.kappa.at(0) == static_cast<int>(std::floor(std::pow(1e5, 0.17) * std::log(1e5))));

  const auto t = build_schedule(100000, 0.49, LogMode::Theoretical);
  const double ln = std::log(1e5);
  CHECK(t.unconstrained.tau.at(0) == doctest::Approx(std::pow(1e5, -0.49) * std::pow(ln, 3.5)));
  CHECK(t.constrained.tau.at(0) == doctest::Approx(std::pow(1e5, -0.49) * std::pow(ln, 2.5)));
}

TEST_CASE("schedule invariants across n and modes") {
  for (auto mode : {LogMode::Practical, LogMode::Theoretical}) {
    for (std::int64_t n : {2, 10, 100, 1000, 100000, 10000000}) {
      for (double d : {0.1, 0.3, 0.49}) {
        const auto s = build_schedule(n, d, mode);
        CHECK(s.unconstrained.count() >= 1);
        CHECK(s.unconstrained.count() <= max_iterations_unconstrained(d));
        CHECK(s.constrained.count() >= 1);
        CHECK(s.constrained.count() <= max_iterations_constrained(d));
        for (int k : s.unconstrained.kappa) CHECK(k >= 2);
        for (int k : s.constrained.kappa) CHECK(k >= 2);
        for (double tau : s.unconstrained.tau) CHECK(tau > 0.0);
      }
    }
  }
}

TEST_CASE("order holds at large n") {
  const auto s = build_schedule(10000000, 0.49, LogMode::Practical);
  CHECK(schedule_order_violations(s.unconstrained).empty());
  CHECK(schedule_order_violations(s.constrained).empty());
}

TEST_CASE("single-track schedule is capped like the constrained track") {
  for (std::int64_t n : {100, 100000, 100000000}) {
    const auto s = build_single_track_schedule(n, 0.49, LogMode::Practical);
    CHECK(s.count() <= 8);
    CHECK(s.tau.at(0) == doctest::Approx(std::pow(double(n), -0.49)));
  }
  const auto t = build_single_track_schedule(100000, 0.49, LogMode::Theoretical);
  CHECK(t.tau.at(0) == doctest::Approx(std::pow(1e5, -0.49) * std::pow(std::log(1e5), 3)));
}

TEST_CASE("closed-form widths") {
  CHECK(unconstrained_width(100000, 0.49, 1) == 1.0);
  CHECK(constrained_width(100000, 0.49, 1) == 1.0);
  CHECK(unconstrained_width(100000, 0.49, 2) ==
        doctest::Approx(std::pow(1e5, -0.5 * 0.51 * 0.4)));
  CHECK(constrained_width(100000, 0.49, 3) ==
        doctest::Approx(std::pow(1e5, -0.51 * (1 - 4.0 / 9.0))));
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(build_schedule(100, 0.5, LogMode::Practical), std::domain_error);
  CHECK_THROWS_AS(build_schedule(100, 0.0, LogMode::Practical), std::domain_error);
  CHECK_THROWS_AS(build_schedule(1, 0.3, LogMode::Practical), std::domain_error);
  CHECK(parse_log_mode(to_string(LogMode::Theoretical)) == LogMode::Theoretical);
  CHECK_THROWS(parse_log_mode("bogus"));
}
