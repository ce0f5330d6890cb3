#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dynprice/commands.hpp"
#include "dynprice/csv.hpp"

using namespace dynprice;

namespace {

const std::string* file(const CommandOutput& out, const std::string& name) {
  for (const auto& [n, c] : out.files)
    if (n == name) return &c;
  return nullptr;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("solve reports the closed-form prices") {
  ExperimentConfig c;
  c.market_sizes = {10, 100};
  const auto out = run_command(c);
  CHECK(out.exit_code == 0);
  CHECK(out.report.find("p_D = ") != std::string::npos);
  const auto* csv = file(out, "solve.csv");
  REQUIRE(csv);
  const auto l = lines(*csv);
  REQUIRE(l.size() == 6);
  CHECK(l[0] == "# dynprice " + std::string(kVersion));
  CHECK(l[1] == "# config_hash " + config_hash(c));
  CHECK(l[2] == "# seed 1");
  CHECK(l[3] == "n,p_u,p_c,p_D,J_D");
  double pu = 0, pc = 0, pd = 0, jd = 0;
  CHECK(std::sscanf(l[5].c_str(), "100,%lf,%lf,%lf,%lf", &pu, &pc, &pd, &jd) == 4);
  CHECK(std::abs(pd - 5.0) < 1e-8);
  CHECK(std::abs(pc - 10.0 / 3.0) < 1e-8);
  CHECK(jd == doctest::Approx(7500.0));
}

TEST_CASE("run with the clairvoyant policy: one segment per replication") {
  ExperimentConfig c;
  c.command = Command::Run;
  c.policies = {PolicyKind::Clairvoyant};
  c.market_sizes = {1000};
  c.replications = 4;
  c.seed = 5;
  const auto out = run_command(c);
  CHECK(out.exit_code == 0);
  const auto* trace = file(out, "trace_clairvoyant.csv");
  const auto* regret = file(out, "regret_clairvoyant.csv");
  REQUIRE(trace);
  REQUIRE(regret);
  const auto l = lines(*trace);
  REQUIRE(l.size() == 3 + 1 + 4);
  CHECK(l[2] == "# seed 5");
  CHECK(l[3] == "rep_id,seg_index,price,t_start,duration,sales,revenue_cum");
  for (int r = 0; r < 4; ++r) {
    int rep = -1, seg = -1;
    double price = 0, start = -1, duration = 0;
    CHECK(std::sscanf(l[4 + r].c_str(), "%d,%d,%lf,%lf,%lf", &rep, &seg, &price, &start, &duration) == 5);
    CHECK(rep == r);
    CHECK(seg == 0);
    CHECK(std::abs(price - 5.0) < 1e-8);
    CHECK(start == 0.0);
    CHECK(duration == 1.0);
  }
  CHECK(lines(*regret).at(3) == "n,policy,replications,mean_regret,std_error");
}

TEST_CASE("run rejects the synthetic policy") {
  ExperimentConfig c;
  c.command = Command::Run;
  c.policies = {PolicyKind::Synthetic};
  c.replications = 2;
  CHECK_THROWS(run_command(c));
}

TEST_CASE("sweep writes regret and slope tables") {
  ExperimentConfig c;
  c.command = Command::Sweep;
  c.policies = {PolicyKind::Synthetic, PolicyKind::Clairvoyant};
  c.market_sizes = {100, 1000, 10000};
  c.replications = 20;
  c.check = true;
  const auto out = run_command(c);
  CHECK(out.exit_code == 0);
  const auto* regret = file(out, "regret.csv");
  const auto* slopes = file(out, "slopes.csv");
  REQUIRE(regret);
  REQUIRE(slopes);
  CHECK(lines(*regret).size() == 4 + 6);
  CHECK(lines(*slopes).at(4).rfind("synthetic", 0) == 0);
}

TEST_CASE("lowerbound on a clairvoyant policy passes") {
  ExperimentConfig c;
  c.command = Command::LowerBound;
  c.demand = "worstcase 0.5";
  c.policies = {PolicyKind::Clairvoyant};
  c.market_sizes = {10000};
  c.replications = 20;
  c.check = true;
  const auto out = run_command(c);
  CHECK(out.exit_code == 0);
  const auto* csv = file(out, "lowerbound.csv");
  REQUIRE(csv);
  CHECK(lines(*csv).at(3) ==
        "policy,n,K_hat,K_se,R_hat_z0,R_hat_z1,lemma14_lhs,lemma14_rhs,lemma16_lhs,lemma16_rhs,pass");
}

TEST_CASE("check runs a selected criterion") {
  ExperimentConfig c;
  c.command = Command::Check;
  c.criteria = {1};
  const auto out = run_command(c);
  CHECK(out.exit_code == 0);
  CHECK(out.report.find("PASS [1]") != std::string::npos);
  REQUIRE(file(out, "acceptance.csv"));
}

TEST_CASE("invalid configs are rejected before running") {
  ExperimentConfig c;
  c.replications = 0;
  CHECK_THROWS_AS(run_command(c), ConfigError);
}
