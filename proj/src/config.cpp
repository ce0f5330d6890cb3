#include "dynprice/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "dynprice/csv.hpp"

namespace dynprice {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

double to_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return INFINITY;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  return v;
}

std::int64_t to_int(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  // accept 1e5 style sizes as long as they are integral
  const double v = to_double(field, t);
  if (!(std::abs(v) < 9.0e15) || v != std::floor(v))
    throw ConfigError(field + ": expected an integer, got '" + text + "'");
  return static_cast<std::int64_t>(v);
}

std::uint64_t to_seed(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE)
    throw ConfigError(field + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

template <class F>
auto wrap(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

std::string join_ints(const auto& values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ", ";
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Run: return "run";
    case Command::Sweep: return "sweep";
    case Command::LowerBound: return "lowerbound";
    case Command::Check: return "check";
  }
  return "unknown";
}

Command parse_command(const std::string& text) {
  for (auto c : {Command::Solve, Command::Run, Command::Sweep, Command::LowerBound, Command::Check})
    if (to_string(c) == text) return c;
  throw ConfigError("command: unknown command '" + text +
                    "' (expected solve|run|sweep|lowerbound|check)");
}

DemandModel parse_demand(const std::string& spec, double price_floor, double price_ceil) {
  const auto w = words(spec);
  if (w.empty()) throw ConfigError("demand.spec: empty demand spec");
  const std::string& family = w[0];
  auto arg = [&](std::size_t i) {
    if (i >= w.size()) throw ConfigError("demand.spec: '" + family + "' needs more parameters");
    std::string text = w[i];
    if (auto eq = text.find('='); eq != std::string::npos) text = text.substr(eq + 1);
    return to_double("demand.spec", text);
  };
  auto arity = [&](std::size_t n) {
    if (w.size() != n + 1)
      throw ConfigError("demand.spec: '" + family + "' takes " + std::to_string(n) +
                        " parameter(s)");
  };
  return wrap("demand.spec", [&] {
    if (family == "linear") {
      arity(2);
      return DemandModel::linear(arg(1), arg(2), price_floor, price_ceil);
    }
    if (family == "exponential") {
      arity(2);
      return DemandModel::exponential(arg(1), arg(2), price_floor, price_ceil);
    }
    if (family == "logit") {
      arity(2);
      return DemandModel::logit(arg(1), arg(2), price_floor, price_ceil);
    }
    if (family == "worstcase") {
      arity(1);
      return DemandModel::worst_case(arg(1));
    }
    if (family == "tabulated") {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 1; i < w.size(); ++i) {
        for (const auto& item : split(w[i], ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos)
            throw ConfigError("demand.spec: tabulated samples are price:rate, got '" + item + "'");
          pts.emplace_back(to_double("demand.spec", item.substr(0, colon)),
                           to_double("demand.spec", item.substr(colon + 1)));
        }
      }
      return DemandModel::tabulated(std::move(pts));
    }
    throw ConfigError("demand.spec: unknown family '" + family +
                      "' (expected linear|exponential|logit|worstcase|tabulated)");
  });
}

void ExperimentConfig::validate() const {
  (void)parse_demand(demand, price_floor, price_ceil);
  if (!(inventory > 0.0) || !std::isfinite(inventory))
    throw ConfigError("demand.inventory: must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw ConfigError("demand.horizon: must be positive");
  if (market_sizes.empty()) throw ConfigError("demand.market_sizes: empty list");
  for (auto n : market_sizes)
    if (n < 2) throw ConfigError("demand.market_sizes: every n must be at least 2");
  if (policies.empty()) throw ConfigError("policy.kinds: empty list");
  for (const auto& p : policy_configs()) wrap("policy", [&] { p.validate(); });
  if (replications < 2) throw ConfigError("run.replications: must be at least 2");
  if (workers < 1) throw ConfigError("run.workers: must be at least 1");
  for (int c : criteria)
    if (c < 1 || c > 9) throw ConfigError("run.criteria: criteria are numbered 1 to 9");
}

std::vector<PolicyConfig> ExperimentConfig::policy_configs() const {
  std::vector<PolicyConfig> out;
  for (auto k : policies) {
    PolicyConfig c = policy;
    c.kind = k;
    out.push_back(c);
  }
  return out;
}

ProblemInstance ExperimentConfig::instance(std::int64_t n) const {
  return ProblemInstance{parse_demand(demand, price_floor, price_ceil), inventory, horizon, n};
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::map<std::string, std::string> seen;
  std::string section = "run";
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "demand" && section != "policy")
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string field = section + "." + key;
    if (!seen.emplace(field, value).second) throw ConfigError(field + ": given twice");

    if (field == "run.command") {
      c.command = parse_command(value);
    } else if (field == "run.replications") {
      c.replications = to_int(field, value);
    } else if (field == "run.seed") {
      c.seed = to_seed(field, value);
    } else if (field == "run.workers") {
      c.workers = static_cast<int>(to_int(field, value));
    } else if (field == "run.out") {
      c.out = value;
    } else if (field == "run.check") {
      if (value != "true" && value != "false")
        throw ConfigError(field + ": expected true or false, got '" + value + "'");
      c.check = value == "true";
    } else if (field == "run.criteria") {
      c.criteria.clear();
      for (const auto& s : split(value, ','))
        c.criteria.push_back(static_cast<int>(to_int(field, s)));
    } else if (field == "demand.spec") {
      c.demand = value;
    } else if (field == "demand.price_floor") {
      c.price_floor = to_double(field, value);
    } else if (field == "demand.price_ceil") {
      c.price_ceil = to_double(field, value);
    } else if (field == "demand.inventory") {
      c.inventory = to_double(field, value);
    } else if (field == "demand.horizon") {
      c.horizon = to_double(field, value);
    } else if (field == "demand.market_sizes") {
      c.market_sizes.clear();
      for (const auto& s : split(value, ',')) c.market_sizes.push_back(to_int(field, s));
    } else if (field == "policy.kinds") {
      c.policies.clear();
      for (const auto& s : split(value, ','))
        c.policies.push_back(wrap(field, [&] { return parse_policy_kind(s); }));
    } else if (field == "policy.delta") {
      c.policy.delta = to_double(field, value);
    } else if (field == "policy.log_mode") {
      c.policy.log_mode = wrap(field, [&] { return parse_log_mode(value); });
    } else if (field == "policy.step3_interval") {
      c.policy.step3_interval = wrap(field, [&] { return parse_step3_interval(value); });
    } else if (field == "policy.learn_fraction") {
      c.policy.learn_fraction = to_double(field, value);
    } else if (field == "policy.grid_size") {
      c.policy.grid_size = static_cast<int>(to_int(field, value));
    } else if (field == "policy.fixed_price") {
      c.policy.fixed_price = to_double(field, value);
    } else if (field == "policy.synthetic_constant") {
      c.policy.synthetic_constant = to_double(field, value);
    } else {
      throw ConfigError(field + ": unknown key");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string print_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[run]\n"
     << "command = " << to_string(c.command) << '\n'
     << "replications = " << c.replications << '\n'
     << "seed = " << c.seed << '\n'
     << "workers = " << c.workers << '\n'
     << "out = " << c.out << '\n'
     << "criteria = " << join_ints(c.criteria) << '\n'
     << "check = " << (c.check ? "true" : "false") << '\n'
     << "\n[demand]\n"
     << "spec = " << c.demand << '\n'
     << "price_floor = " << format_double(c.price_floor) << '\n'
     << "price_ceil = " << format_double(c.price_ceil) << '\n'
     << "inventory = " << format_double(c.inventory) << '\n'
     << "horizon = " << format_double(c.horizon) << '\n'
     << "market_sizes = " << join_ints(c.market_sizes) << '\n'
     << "\n[policy]\n";
  std::string kinds;
  for (auto k : c.policies) kinds += (kinds.empty() ? "" : ", ") + to_string(k);
  os << "kinds = " << kinds << '\n'
     << "delta = " << format_double(c.policy.delta) << '\n'
     << "log_mode = " << to_string(c.policy.log_mode) << '\n'
     << "step3_interval = " << to_string(c.policy.step3_interval) << '\n';
  if (c.policy.learn_fraction)
    os << "learn_fraction = " << format_double(*c.policy.learn_fraction) << '\n';
  if (c.policy.grid_size) os << "grid_size = " << *c.policy.grid_size << '\n';
  os << "fixed_price = " << format_double(c.policy.fixed_price) << '\n'
     << "synthetic_constant = " << format_double(c.policy.synthetic_constant) << '\n';
  return os.str();
}

std::string config_hash(const ExperimentConfig& config) {
  // worker count and output location do not change any result
  ExperimentConfig identity = config;
  identity.workers = 1;
  identity.out.clear();
  return fnv1a_hex(print_config(identity));
}

}  // namespace dynprice
