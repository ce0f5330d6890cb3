// dynprice: command-line front end for the pricing experiments.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dynprice/commands.hpp"
#include "dynprice/config.hpp"

namespace {

using namespace dynprice;

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> demand;
  std::optional<double> price_floor, price_ceil, inventory, horizon;
  std::vector<std::string> policies;
  std::vector<std::string> market_sizes;
  std::optional<std::int64_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<std::string> log_mode, step3_interval;
  std::optional<double> learn_fraction, fixed_price;
  std::optional<int> grid_size;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::vector<int> criteria;
  bool check = false;
};

void add_options(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path, "key = value config file; flags override it");
  app->add_option("--demand", o.demand,
                  "demand spec, e.g. \"linear 30 3\", \"exponential 80 0.5\", \"worstcase 0.5\"");
  app->add_option("--price-floor", o.price_floor, "lower price bound");
  app->add_option("--price-ceil", o.price_ceil, "upper price bound");
  app->add_option("--x", o.inventory, "inventory per unit market size");
  app->add_option("--T", o.horizon, "selling horizon");
  app->add_option("--policy", o.policies,
                  "dpa|dpa2|clairvoyant|single_phase|fixed|synthetic (comma separated)")
      ->delimiter(',');
  app->add_option("--n", o.market_sizes, "market size(s), comma separated")->delimiter(',');
  app->add_option("--reps", o.reps, "Monte Carlo replications");
  app->add_option("--seed", o.seed, "root seed");
  app->add_option("--delta", o.delta, "DPA exponent in (0, 1/2)");
  app->add_option("--log-mode", o.log_mode, "theoretical|practical");
  app->add_option("--step3-interval", o.step3_interval, "full|last");
  app->add_option("--learn-fraction", o.learn_fraction, "single_phase learning share of T");
  app->add_option("--grid-size", o.grid_size, "single_phase grid size");
  app->add_option("--fixed-price", o.fixed_price, "price of the fixed policy (inf = cutoff)");
  app->add_option("--out", o.out, "output directory for CSV files");
  app->add_option("--workers", o.workers, "worker threads");
  app->add_option("--criteria", o.criteria, "check: criteria to run (comma separated)")
      ->delimiter(',');
  app->add_flag("--check", o.check, "exit nonzero when an invariant fails");
}

ExperimentConfig build_config(const Overrides& o, std::optional<Command> command) {
  ExperimentConfig c = o.config_path ? load_config(*o.config_path) : ExperimentConfig{};
  if (command) c.command = *command;
  // A config written for another family keeps its bounds unless overridden;
  // parse_demand ignores them for the worst-case family.
  if (o.demand) c.demand = *o.demand;
  if (o.price_floor) c.price_floor = *o.price_floor;
  if (o.price_ceil) c.price_ceil = *o.price_ceil;
  if (o.inventory) c.inventory = *o.inventory;
  if (o.horizon) c.horizon = *o.horizon;
  if (!o.policies.empty()) {
    c.policies.clear();
    for (const auto& p : o.policies) {
      try {
        c.policies.push_back(parse_policy_kind(p));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("--policy: ") + e.what());
      }
    }
  }
  if (!o.market_sizes.empty()) {
    c.market_sizes.clear();
    for (const auto& s : o.market_sizes) {
      ExperimentConfig probe;
      probe = parse_config("[demand]\nmarket_sizes = " + s + "\n");
      c.market_sizes.insert(c.market_sizes.end(), probe.market_sizes.begin(),
                            probe.market_sizes.end());
    }
  }
  if (o.reps) c.replications = *o.reps;
  if (o.seed) c.seed = *o.seed;
  if (o.delta) c.policy.delta = *o.delta;
  if (o.log_mode) c.policy.log_mode = parse_log_mode(*o.log_mode);
  if (o.step3_interval) c.policy.step3_interval = parse_step3_interval(*o.step3_interval);
  if (o.learn_fraction) c.policy.learn_fraction = *o.learn_fraction;
  if (o.grid_size) c.policy.grid_size = *o.grid_size;
  if (o.fixed_price) c.policy.fixed_price = *o.fixed_price;
  if (o.out) c.out = *o.out;
  if (o.workers) c.workers = *o.workers;
  if (!o.criteria.empty()) c.criteria = o.criteria;
  if (o.check) c.check = true;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic pricing with demand learning: benchmarks, regret sweeps, lower-bound lab"};
  app.require_subcommand(0, 1);
  Overrides overrides;
  add_options(&app, overrides);

  struct Sub {
    const char* name;
    Command command;
    const char* help;
  };
  const Sub subs[] = {
      {"solve", Command::Solve, "fluid optimum p_u, p_c, p_D and J_D"},
      {"run", Command::Run, "Monte Carlo cell at the first --n: traces and regret"},
      {"sweep", Command::Sweep, "regret over the --n list with a log-log fit"},
      {"lowerbound", Command::LowerBound, "worst-case family KL and regret inequalities"},
      {"check", Command::Check, "acceptance criteria, one PASS/FAIL line each"},
  };
  std::vector<std::pair<CLI::App*, Command>> commands;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_options(sub, overrides);
    commands.emplace_back(sub, s.command);
  }

  CLI11_PARSE(app, argc, argv);

  std::optional<Command> command;
  for (const auto& [sub, cmd] : commands)
    if (sub->parsed()) command = cmd;
  if (!command && !overrides.config_path) {
    std::cout << app.help();
    return 2;
  }

  ExperimentConfig config;
  try {
    config = build_config(overrides, command);
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    const CommandOutput out = run_command(config);
    std::cout << out.report << std::flush;
    if (!config.out.empty()) write_outputs(out, config.out);
    return out.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
