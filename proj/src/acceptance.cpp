#include "dynprice/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "dynprice/baselines.hpp"
#include "dynprice/commands.hpp"
#include "dynprice/config.hpp"
#include "dynprice/dpa.hpp"
#include "dynprice/lower_bound.hpp"
#include "dynprice/market_sim.hpp"
#include "dynprice/parallel.hpp"
#include "dynprice/regret.hpp"

namespace dynprice {
namespace {

constexpr std::int64_t kLargeN = 100000;

struct Reference {
  const char* name;
  const char* spec;
  double slope;  // reported log-log slope
};

constexpr Reference kLinear{"linear", "linear 30 3", -0.444};
constexpr Reference kExponential{"exponential", "exponential 80 0.5", -0.465};

ProblemInstance reference_instance(const Reference& ref, std::int64_t n) {
  return ProblemInstance{parse_demand(ref.spec, 0.1, 10.0), 20.0, 1.0, n};
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
    if (!ok) {
      detail << " [violated]";
      pass = false;
    }
  }
};

PolicyConfig dpa_config(Step3Interval s3) {
  PolicyConfig c;
  c.kind = PolicyKind::Dpa;
  c.delta = 0.49;
  c.log_mode = LogMode::Practical;
  c.step3_interval = s3;
  return c;
}

// Runs DPA `runs` times at n = 1e5 and returns the diagnostics of each run.
std::vector<LearningDiagnostics> dpa_diagnostics(const ProblemInstance& instance,
                                                 const AcceptanceOptions& opt,
                                                 Step3Interval s3) {
  std::vector<LearningDiagnostics> out(static_cast<std::size_t>(opt.property_runs));
  const auto cfg = dpa_config(s3);
  parallel_for(opt.property_runs, opt.workers, [&](std::int64_t rep) {
    DpaPolicy policy(SellerView::of(instance), DpaOptions{cfg.delta, cfg.log_mode, s3});
    run_policy(instance, policy, replication_seed(opt.seed, instance.market_size, rep));
    out[static_cast<std::size_t>(rep)] = policy.diagnostics();
  });
  return out;
}

// --- 1 -------------------------------------------------------------------

void closed_form(const AcceptanceOptions&, Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const DemandModel lin = parse_demand(kLinear.spec, 0.1, 10.0);
  const DemandModel exp = parse_demand(kExponential.spec, 0.1, 10.0);
  const double pu = solve_pu(lin);
  const double pd = deterministic_price(exp, 20.0, 1.0);
  const double jl = deterministic_value(lin, 20.0, 1.0);
  const double je = deterministic_value(exp, 20.0, 1.0);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double ln4 = std::log(4.0);
  o.require(std::abs(pu - 5.0) <= 1e-6, "linear p_u=" + fmt(pu, 12));
  o.require(std::abs(pd - 2.0 * ln4) <= 1e-6, "exponential p_D=" + fmt(pd, 12));
  o.require(std::abs(jl - 75.0) <= 1e-6, "linear J_D=" + fmt(jl, 12));
  o.require(std::abs(je - 40.0 * ln4) <= 1e-6, "exponential J_D=" + fmt(je, 12));
  o.require(secs < 1.0, "solve time " + fmt(secs, 3) + " s");
}

// --- 2 -------------------------------------------------------------------

void slopes(const AcceptanceOptions& opt, Outcome& o) {
  const std::vector<std::int64_t> ns = {100, 1000, 10000, 100000};
  for (const auto& ref : {kLinear, kExponential}) {
    const auto report = sweep(reference_instance(ref, ns.front()),
                              dpa_config(Step3Interval::LastInterval), ns, opt.replications,
                              opt.seed, opt.workers);
    std::string regrets;
    for (const auto& e : report.per_n) regrets += (regrets.empty() ? "" : "/") + fmt(e.mean_regret, 3);
    o.require(std::abs(report.fit.slope - ref.slope) <= 0.10,
              std::string(ref.name) + " slope " + fmt(report.fit.slope) + " vs " +
                  fmt(ref.slope) + "+-0.10 (regret " + regrets + ")");
  }
}

// --- 3 -------------------------------------------------------------------

void ordering(const AcceptanceOptions& opt, Outcome& o) {
  for (const auto& ref : {kLinear, kExponential}) {
    const ProblemInstance inst = reference_instance(ref, kLargeN);
    PolicyConfig clair;
    clair.kind = PolicyKind::Clairvoyant;
    PolicyConfig single;
    single.kind = PolicyKind::SinglePhase;
    const auto rc = estimate_regret(inst, clair, opt.replications, opt.seed, opt.workers);
    const auto rd = estimate_regret(inst, dpa_config(Step3Interval::LastInterval),
                                    opt.replications, opt.seed, opt.workers);
    const auto rs = estimate_regret(inst, single, opt.replications, opt.seed, opt.workers);
    const double gap1 = rd.mean_regret - rc.mean_regret;
    const double gap2 = rs.mean_regret - rd.mean_regret;
    const double se1 = std::hypot(rc.std_error, rd.std_error);
    const double se2 = std::hypot(rd.std_error, rs.std_error);
    o.require(gap1 >= 2.0 * se1 && gap2 >= 2.0 * se2,
              std::string(ref.name) + " clairvoyant " + fmt(rc.mean_regret) + " < dpa " +
                  fmt(rd.mean_regret) + " < single_phase " + fmt(rs.mean_regret) + " (gaps " +
                  fmt(gap1 / se1, 3) + ", " + fmt(gap2 / se2, 3) + " SE)");
  }
}

// --- 4 and 5 -------------------------------------------------------------

void containment(const AcceptanceOptions& opt, Outcome& o) {
  for (const auto& ref : {kLinear, kExponential}) {
    const ProblemInstance inst = reference_instance(ref, kLargeN);
    const double pd = deterministic_price(inst.demand, inst.inventory, inst.horizon);
    const auto diags = dpa_diagnostics(inst, opt, Step3Interval::FullInterval);
    std::int64_t hit = 0;
    for (const auto& d : diags) hit += d.intervals_contain(pd);
    const double freq = static_cast<double>(hit) / static_cast<double>(diags.size());
    o.require(freq >= 0.95, std::string(ref.name) + " containment " + fmt(freq, 3) + " >= 0.95");
  }
}

void transition(const AcceptanceOptions& opt, Outcome& o) {
  auto entry_frequency = [&](const Reference& ref) {
    const auto diags =
        dpa_diagnostics(reference_instance(ref, kLargeN), opt, Step3Interval::FullInterval);
    std::int64_t entered = 0;
    for (const auto& d : diags) entered += d.entered_step3;
    return static_cast<double>(entered) / static_cast<double>(diags.size());
  };
  // p_u >= p_c on the linear curve, p_c > p_u on the exponential one
  const double lin = entry_frequency(kLinear);
  const double exp = entry_frequency(kExponential);
  o.require(lin <= 0.10, "linear step-3 entry " + fmt(lin, 3) + " <= 0.10");
  o.require(exp >= 0.90, "exponential step-3 entry " + fmt(exp, 3) + " >= 0.90");
}

// --- 6 -------------------------------------------------------------------

void simulator(const AcceptanceOptions& opt, Outcome& o) {
  struct Case {
    std::int64_t n;
    double price;
    double duration;
  };
  const DemandModel lin = parse_demand(kLinear.spec, 0.1, 10.0);
  constexpr std::int64_t kReps = 10000;
  for (const Case c : {Case{100000, 5.0, 0.01}, Case{100, 9.0, 0.01}, Case{1000, 2.0, 0.003}}) {
    const ProblemInstance inst{lin, 1000.0, 1.0, c.n};
    const double mu = static_cast<double>(c.n) * lin.rate_at(c.price) * c.duration;
    std::vector<double> counts(kReps);
    for (std::int64_t rep = 0; rep < kReps; ++rep) {
      MarketState s = MarketState::start(inst, replication_seed(opt.seed, c.n, rep));
      counts[static_cast<std::size_t>(rep)] =
          static_cast<double>(simulate_segment(s, lin, c.n, Price(c.price), c.duration).demand);
    }
    double mean = 0.0;
    for (double v : counts) mean += v;
    mean /= kReps;
    double var = 0.0;
    for (double v : counts) var += (v - mean) * (v - mean);
    var /= kReps - 1;
    const double se_mean = std::sqrt(mu / kReps);
    const double se_var = std::sqrt((mu + 2.0 * mu * mu) / kReps);
    o.require(std::abs(mean - mu) <= 4.0 * se_mean && std::abs(var - mu) <= 4.0 * se_var,
              "mean " + fmt(mean, 7) + ", var " + fmt(var, 7) + " vs " + fmt(mu, 7));
  }
  const auto tail = poisson_tail_check(15.0, 1e4, 1.0, 1e4, lin.constants().rate_bound, 100000,
                                       opt.seed, 10.0);
  o.require(tail.upper_frequency <= tail.bound && tail.lower_frequency <= tail.bound,
            "tail frequencies " + fmt(tail.upper_frequency) + "/" + fmt(tail.lower_frequency) +
                " <= " + fmt(tail.bound));
}

// --- 7 -------------------------------------------------------------------

void lower_bound_lab(const AcceptanceOptions& opt, Outcome& o) {
  constexpr std::int64_t n = 10000;
  {
    const ProblemInstance inst = WorstCaseInstance{}.instance(n);
    FixedPricePolicy at_one(Price(1.0), inst.horizon);
    const auto trace = run_policy(inst, at_one, opt.seed);
    bool zero = true;
    for (double z : {WorstCaseInstance::z1(n), 1.0 / 3.0, 2.0 / 3.0})
      zero = zero && kl_path(trace, n, WorstCaseInstance::kZ0, z).value == 0.0;
    o.require(zero, "kl_path(p=1) = 0");
  }
  PolicyConfig clair;
  clair.kind = PolicyKind::Clairvoyant;
  PolicyConfig fixed;
  fixed.kind = PolicyKind::Fixed;
  fixed.fixed_price = 1.5;
  PolicyConfig single;
  single.kind = PolicyKind::SinglePhase;
  for (const auto& p : {clair, fixed, single}) {
    const auto r = check_lemma14(p, n, opt.replications, opt.seed, opt.workers, 2.0);
    o.require(r.pass(), p.label() + " K=" + fmt(r.k_hat) + "<=" + fmt(r.lemma14_rhs) + ", R0+R1=" +
                            fmt(r.lemma16_lhs) + ">=" + fmt(r.lemma16_rhs));
  }
  double worst = 0.0;
  for (double z : {1.0 / 3.0, 0.4, 0.5, 0.6, 2.0 / 3.0})
    worst = std::max(worst, std::abs(pD_of_z(z) - solve_pu(DemandModel::worst_case(z))));
  o.require(worst <= 1e-8, "pD_of_z vs solver max error " + fmt(worst, 3));
}

// --- 8 -------------------------------------------------------------------

void determinism(const AcceptanceOptions& opt, Outcome& o) {
  ExperimentConfig run;
  run.command = Command::Run;
  run.market_sizes = {1000};
  run.policies = {PolicyKind::Dpa, PolicyKind::Clairvoyant, PolicyKind::SinglePhase};
  run.replications = 20;
  run.seed = opt.seed;

  ExperimentConfig sw;
  sw.command = Command::Sweep;
  sw.demand = kExponential.spec;
  sw.market_sizes = {100, 1000, 10000};
  sw.policies = {PolicyKind::Dpa, PolicyKind::Dpa2};
  sw.replications = 50;
  sw.seed = opt.seed;

  for (auto cfg : {run, sw}) {
    const auto a = run_command(cfg);
    const auto b = run_command(cfg);
    cfg.workers = 2;
    const auto c = run_command(cfg);
    bool same = a.files.size() == b.files.size() && a.files.size() == c.files.size();
    std::size_t bytes = 0;
    for (std::size_t i = 0; same && i < a.files.size(); ++i) {
      same = a.files[i] == b.files[i] && a.files[i].second == c.files[i].second;
      bytes += a.files[i].second.size();
    }
    o.require(same, to_string(cfg.command) + ": " + std::to_string(a.files.size()) + " CSVs, " +
                        std::to_string(bytes) + " bytes identical across runs and worker counts");
  }
}

// --- 9 -------------------------------------------------------------------

void dpa2_kink(const AcceptanceOptions& opt, Outcome& o) {
  const DemandModel demand = parse_demand(KinkedInstance::spec(), 0.1, 10.0);
  const ProblemInstance large{demand, KinkedInstance::kInventory, KinkedInstance::kHorizon, kLargeN};
  std::vector<char> near(static_cast<std::size_t>(opt.property_runs));
  parallel_for(opt.property_runs, opt.workers, [&](std::int64_t rep) {
    Dpa2Policy policy(SellerView::of(large), 0.49, LogMode::Practical);
    run_policy(large, policy, replication_seed(opt.seed, kLargeN, rep));
    const auto& d = policy.diagnostics();
    near[static_cast<std::size_t>(rep)] =
        d.applied_price && std::abs(*d.applied_price - KinkedInstance::kKink) <= 0.05;
  });
  std::int64_t hits = 0;
  for (char c : near) hits += c;
  const double freq = static_cast<double>(hits) / static_cast<double>(near.size());
  o.require(freq >= 0.90, "applied price within 0.05 of the kink in " + fmt(freq, 3) + " of runs");

  PolicyConfig cfg;
  cfg.kind = PolicyKind::Dpa2;
  cfg.log_mode = LogMode::Practical;
  ProblemInstance small = large;
  small.market_size = 1000;
  const auto r3 = estimate_regret(small, cfg, opt.replications, opt.seed, opt.workers);
  const auto r5 = estimate_regret(large, cfg, opt.replications, opt.seed, opt.workers);
  const double ratio = r3.mean_regret / r5.mean_regret;
  o.require(r5.mean_regret > 0.0 && ratio >= 3.0,
            "regret n=1e3 " + fmt(r3.mean_regret) + " / n=1e5 " + fmt(r5.mean_regret) + " = " +
                fmt(ratio, 3) + " >= 3");
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(const AcceptanceOptions&, Outcome&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "closed-form benchmark", closed_form},
      {2, "slope reproduction", slopes},
      {3, "ordering", ordering},
      {4, "containment", containment},
      {5, "transition discrimination", transition},
      {6, "simulator statistics", simulator},
      {7, "lower-bound lab", lower_bound_lab},
      {8, "determinism", determinism},
      {9, "dpa2 kink", dpa2_kink},
  };
  return all;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
      continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      c.body(options, o);
      r.pass = o.pass;
      r.detail = o.detail.str();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " ("
     << fmt(r.seconds, 3) << " s)";
  return os.str();
}

}  // namespace dynprice
