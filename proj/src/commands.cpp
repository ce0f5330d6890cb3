#include "dynprice/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dynprice/acceptance.hpp"
#include "dynprice/csv.hpp"
#include "dynprice/lower_bound.hpp"
#include "dynprice/market_sim.hpp"
#include "dynprice/parallel.hpp"
#include "dynprice/regret.hpp"

namespace dynprice {
namespace {

std::ostringstream csv_stream(const ExperimentConfig& config) {
  std::ostringstream os;
  write_provenance(os, config_hash(config), config.seed);
  return os;
}

std::string file_label(std::string label) {
  for (char& c : label)
    if (c == '(' || c == ')') c = '_';
  while (!label.empty() && label.back() == '_') label.pop_back();
  return label;
}

std::string fmt(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

CommandOutput cmd_solve(const ExperimentConfig& config) {
  const ProblemInstance unit = config.instance(1);
  const DemandModel& m = unit.demand;
  const double pu = solve_pu(m);
  const double pc = solve_pc(m, unit.inventory, unit.horizon);
  const double pd = std::max(pu, pc);
  const double jd = deterministic_value(unit);

  CommandOutput out;
  std::ostringstream r;
  r << "demand " << m.describe() << ", x = " << fmt(unit.inventory) << ", T = "
    << fmt(unit.horizon) << '\n'
    << "p_u = " << fmt(pu, 12) << '\n'
    << "p_c = " << fmt(pc, 12) << '\n'
    << "p_D = " << fmt(pd, 12) << '\n'
    << "J_D per unit n = " << fmt(jd, 12) << '\n';
  auto csv = csv_stream(config);
  csv << "n,p_u,p_c,p_D,J_D\n";
  for (auto n : config.market_sizes) {
    const double jn = deterministic_value(m, unit.inventory, unit.horizon, n);
    r << "J_D at n = " << n << ": " << fmt(jn, 12) << '\n';
    csv << n << ',' << format_double(pu) << ',' << format_double(pc) << ',' << format_double(pd)
        << ',' << format_double(jn) << '\n';
  }
  out.report = r.str();
  out.files.emplace_back("solve.csv", csv.str());
  return out;
}

CommandOutput cmd_run(const ExperimentConfig& config) {
  const std::int64_t n = config.market_sizes.front();
  const ProblemInstance instance = config.instance(n);
  CommandOutput out;
  std::ostringstream r;
  for (const auto& policy : config.policy_configs()) {
    if (policy.kind == PolicyKind::Synthetic)
      throw ConfigError("policy.kinds: synthetic has no traces; use sweep");
    const auto count = static_cast<std::size_t>(config.replications);
    std::vector<SimulationTrace> traces(count);
    std::vector<double> revenue(count);
    parallel_for(config.replications, config.workers, [&](std::int64_t rep) {
      auto p = make_policy(policy, instance);
      auto& t = traces[static_cast<std::size_t>(rep)];
      t = run_policy(instance, *p, replication_seed(config.seed, n, rep));
      revenue[static_cast<std::size_t>(rep)] = t.terminal_revenue;
    });
    const RegretReport report{policy.label(),
                              {summarize_regret(revenue, deterministic_value(instance), n)},
                              {}};
    const auto& est = report.per_n.front();

    auto trace_csv = csv_stream(config);
    write_trace_csv_header(trace_csv);
    for (std::size_t rep = 0; rep < count; ++rep)
      write_trace_csv_rows(trace_csv, static_cast<std::int64_t>(rep), traces[rep]);
    auto regret_csv = csv_stream(config);
    write_regret_csv(regret_csv, std::span<const RegretReport>(&report, 1));

    const std::string tag = file_label(policy.label());
    out.files.emplace_back("trace_" + tag + ".csv", trace_csv.str());
    out.files.emplace_back("regret_" + tag + ".csv", regret_csv.str());
    r << policy.label() << " n=" << n << " reps=" << est.replications
      << " mean_regret=" << fmt(est.mean_regret) << " se=" << fmt(est.std_error) << '\n';

    if (config.check) {
      for (const auto& v : check_report(report)) {
        r << "invariant violated: " << v << '\n';
        out.exit_code = 1;
      }
    }
  }
  out.report = r.str();
  return out;
}

CommandOutput cmd_sweep(const ExperimentConfig& config) {
  const ProblemInstance tmpl = config.instance(config.market_sizes.front());
  std::vector<RegretReport> reports;
  for (const auto& policy : config.policy_configs())
    reports.push_back(sweep(tmpl, policy, config.market_sizes, config.replications, config.seed,
                            config.workers));

  CommandOutput out;
  std::ostringstream r;
  for (const auto& rep : reports) {
    r << rep.policy << ": slope " << fmt(rep.fit.slope, 6) << ", intercept "
      << fmt(rep.fit.intercept, 6) << ", r^2 " << fmt(rep.fit.r_squared, 6) << '\n';
    for (const auto& e : rep.per_n)
      r << "  n=" << e.market_size << " mean_regret=" << fmt(e.mean_regret)
        << " se=" << fmt(e.std_error) << '\n';
    for (const auto& w : rep.fit.warnings) r << "  warning: " << w << '\n';
    if (config.check) {
      for (const auto& v : check_report(rep)) {
        r << "invariant violated: " << v << '\n';
        out.exit_code = 1;
      }
    }
  }
  auto regret_csv = csv_stream(config);
  write_regret_csv(regret_csv, reports);
  auto slope_csv = csv_stream(config);
  write_slope_csv(slope_csv, reports);
  out.files.emplace_back("regret.csv", regret_csv.str());
  out.files.emplace_back("slopes.csv", slope_csv.str());
  out.report = r.str();
  return out;
}

CommandOutput cmd_lowerbound(const ExperimentConfig& config) {
  std::vector<LowerBoundReport> reports;
  for (const auto& policy : config.policy_configs()) {
    if (policy.kind == PolicyKind::Synthetic)
      throw ConfigError("policy.kinds: synthetic cannot run on the worst-case family");
    for (auto n : config.market_sizes)
      reports.push_back(check_lemma14(policy, n, config.replications, config.seed, config.workers));
  }
  CommandOutput out;
  std::ostringstream r;
  for (const auto& rep : reports) {
    r << rep.policy << " n=" << rep.n << ": K_hat=" << fmt(rep.k_hat) << " (se " << fmt(rep.k_se)
      << "), R(z0)=" << fmt(rep.r_hat_z0) << ", R(z1)=" << fmt(rep.r_hat_z1)
      << "; lemma14 " << (rep.lemma14_pass ? "holds" : "violated") << ", lemma16 "
      << (rep.lemma16_pass ? "holds" : "violated") << '\n';
    if (config.check && !rep.pass()) out.exit_code = 1;
  }
  auto csv = csv_stream(config);
  write_lower_bound_csv(csv, reports);
  out.files.emplace_back("lowerbound.csv", csv.str());
  out.report = r.str();
  return out;
}

CommandOutput cmd_check(const ExperimentConfig& config) {
  AcceptanceOptions opts;
  opts.seed = config.seed;
  opts.workers = config.workers;
  opts.replications = config.replications;
  opts.only = config.criteria;
  CommandOutput out;
  std::ostringstream r;
  auto csv = csv_stream(config);
  csv << "criterion,name,pass,seconds,detail\n";
  for (const auto& res : run_acceptance(opts)) {
    r << format_result(res) << '\n';
    csv << res.id << ',' << res.name << ',' << (res.pass ? "true" : "false") << ','
        << fmt(res.seconds, 4) << ",\"" << res.detail << "\"\n";
    if (!res.pass) out.exit_code = 1;
  }
  out.files.emplace_back("acceptance.csv", csv.str());
  out.report = r.str();
  return out;
}

CommandOutput run_command(const ExperimentConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::Solve: return cmd_solve(config);
    case Command::Run: return cmd_run(config);
    case Command::Sweep: return cmd_sweep(config);
    case Command::LowerBound: return cmd_lowerbound(config);
    case Command::Check: return cmd_check(config);
  }
  throw ConfigError("command: unhandled");
}

void write_outputs(const CommandOutput& output, const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + directory + "': " + ec.message());
  for (const auto& [name, contents] : output.files) {
    const fs::path path = fs::path(directory) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    f << contents;
    if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

}  // namespace dynprice
