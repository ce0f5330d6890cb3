#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dynprice/lower_bound.hpp"

using namespace dynprice;

namespace {

SimulationTrace constant_trace(double price) {
  SimulationTrace t;
  t.segments.push_back({Price(price), 0.0, 1.0, 0, 0});
  return t;
}

}  // namespace

TEST_CASE("p^D closed form") {
  CHECK(pD_of_z(0.5) == 1.0);
  CHECK(pD_of_z(1.0 / 3.0) == doctest::Approx(1.25));
  CHECK(pD_of_z(2.0 / 3.0) == doctest::Approx(0.875));
  CHECK_THROWS_AS(pD_of_z(0.3), std::domain_error);
  CHECK_THROWS_AS(pD_of_z(0.7), std::domain_error);
}

TEST_CASE("p^D agrees with the generic solver") {
  for (double z : {1.0 / 3.0, 0.4, 0.5, 0.6, 2.0 / 3.0}) {
    const WorstCaseInstance w{z};
    const auto inst = w.instance(100);
    CHECK(std::abs(deterministic_price(inst.demand, inst.inventory, inst.horizon) - pD_of_z(z)) <
          1e-8);
    CHECK(WorstCaseInstance::rate(1.0, z) == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("family curvature band and mean-value gap") {
  for (int k = 0; k <= 20; ++k) {
    const double z = 1.0 / 3.0 + (1.0 / 3.0) * k / 20.0;
    // r(p) = p (1/2 + z - z p), so r''(p) = -2z
    const double h = 1e-4;
    const auto r = [z](double p) { return p * WorstCaseInstance::rate(p, z); };
    for (double p : {0.6, 1.0, 1.4}) {
      const double d2 = (r(p + h) - 2 * r(p) + r(p - h)) / (h * h);
      CHECK(d2 >= -4.0 / 3.0 - 1e-5);
      CHECK(d2 <= -2.0 / 3.0 + 1e-5);
    }
    CHECK(std::abs(pD_of_z(z) - pD_of_z(0.5)) >= std::abs(z - 0.5) / 4 - 1e-15);
  }
}

TEST_CASE("z1 moves toward z0 as n grows") {
  CHECK(WorstCaseInstance::z1(1) == 0.75);
  CHECK(WorstCaseInstance::z1(10000) == doctest::Approx(0.525));
}

TEST_CASE("pathwise KL oracles") {
  const auto k = kl_path(constant_trace(1.5), 100, 0.5, 1.0 / 3.0);
  CHECK(k.value == doctest::Approx(1.14128).epsilon(1e-5));
  CHECK(k.value == doctest::Approx(100 * (0.25 * std::log(0.75) + 1.0 / 3.0 - 0.25)));
  CHECK(kl_path(constant_trace(1.5), 100, 0.5, 0.5).value == 0.0);
  for (double z : {1.0 / 3.0, 0.45, 2.0 / 3.0}) CHECK(kl_path(constant_trace(1.0), 100, 0.5, z).value == 0.0);

  SimulationTrace cut;
  cut.segments.push_back({Price::cutoff(), 0.0, 1.0, 0, 0});
  CHECK(kl_path(cut, 100, 0.5, 0.6).value == 0.0);

  // lambda(3/2; z) = 1/2 - z/2 = 0 at z = 1
  const auto inf = kl_path(constant_trace(1.5), 100, 0.5, 1.0);
  CHECK(inf.infinite);
}

TEST_CASE("KL is non-negative along mixed traces") {
  SimulationTrace t;
  t.segments.push_back({Price(0.5), 0.0, 0.3, 0, 0});
  t.segments.push_back({Price(1.2), 0.3, 0.3, 0, 0});
  t.segments.push_back({Price::cutoff(), 0.6, 0.4, 0, 0});
  for (double z = 1.0 / 3.0; z <= 2.0 / 3.0; z += 0.05) CHECK(kl_path(t, 1000, 0.5, z).value >= 0.0);
}

TEST_CASE("lower bound values") {
  CHECK(regret_lower_bound(1) == doctest::Approx(1.0 / 6912));
  CHECK(regret_lower_bound(1e4) == doctest::Approx(1.0 / 691200));
  for (double n : {1.0, 7.0, 1e4, 3e9}) CHECK(regret_lower_bound(4 * n) == regret_lower_bound(n) / 2);
}

TEST_CASE("clairvoyant policy carries no information") {
  PolicyConfig c;
  c.kind = PolicyKind::Clairvoyant;
  const auto r = check_lemma14(c, 10000, 200, 1);
  CHECK(r.k_hat == 0.0);
  CHECK(r.lemma14_pass);
  CHECK(r.lemma16_pass);
}

TEST_CASE("fixed price 3/2 is informative and satisfies both inequalities") {
  PolicyConfig c;
  c.kind = PolicyKind::Fixed;
  c.fixed_price = 1.5;
  const auto r = check_lemma14(c, 10000, 200, 1);
  const double z1 = WorstCaseInstance::z1(10000);
  const double lz = 0.5 - z1 / 2;
  CHECK(r.k_hat == doctest::Approx(10000 * (0.25 * std::log(0.25 / lz) + lz - 0.25)));
  CHECK(r.k_hat > 0.0);
  CHECK(r.r_hat_z0 > 0.0);
  CHECK(r.pass());
}
