#include "dynprice/regret.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include "dynprice/csv.hpp"
#include "dynprice/market_sim.hpp"
#include "dynprice/parallel.hpp"
#include "dynprice/random.hpp"

namespace dynprice {

std::uint64_t replication_seed(std::uint64_t root_seed, std::int64_t market_size, std::int64_t rep) {
  return derive_seed(root_seed,
                     {static_cast<std::uint64_t>(market_size), static_cast<std::uint64_t>(rep)});
}

std::vector<double> simulate_revenues(const ProblemInstance& instance, const PolicyConfig& policy,
                                      std::int64_t replications, std::uint64_t root_seed,
                                      int workers) {
  instance.validate();
  policy.validate();
  std::vector<double> revenue(static_cast<std::size_t>(std::max<std::int64_t>(replications, 0)));
  parallel_for(replications, workers, [&](std::int64_t rep) {
    auto p = make_policy(policy, instance);
    const auto trace = run_policy(instance, *p, replication_seed(root_seed, instance.market_size, rep));
    revenue[static_cast<std::size_t>(rep)] = trace.terminal_revenue;
  });
  return revenue;
}

RegretEstimate summarize_regret(std::span<const double> revenues, double benchmark,
                                std::int64_t market_size) {
  if (!(benchmark > 0.0))
    throw UndefinedRegretError("regret undefined: deterministic benchmark is zero");
  if (revenues.size() < 2) throw std::invalid_argument("regret needs at least two replications");
  const double count = static_cast<double>(revenues.size());
  double mean = 0.0;
  for (double r : revenues) mean += r;
  mean /= count;
  double ss = 0.0;
  for (double r : revenues) ss += (r - mean) * (r - mean);
  RegretEstimate e;
  e.market_size = market_size;
  e.replications = static_cast<std::int64_t>(revenues.size());
  e.benchmark = benchmark;
  e.mean_revenue = mean;
  e.revenue_sd = std::sqrt(ss / (count - 1.0));
  e.mean_regret = 1.0 - mean / benchmark;
  e.std_error = e.revenue_sd / std::sqrt(count) / benchmark;
  return e;
}

RegretEstimate estimate_regret(const ProblemInstance& instance, const PolicyConfig& policy,
                               std::int64_t replications, std::uint64_t root_seed, int workers) {
  if (replications < 2) throw std::invalid_argument("estimate_regret: replications must be >= 2");
  const double benchmark = deterministic_value(instance);
  if (!(benchmark > 0.0))
    throw UndefinedRegretError("regret undefined: deterministic benchmark is zero");
  const auto revenues = simulate_revenues(instance, policy, replications, root_seed, workers);
  return summarize_regret(revenues, benchmark, instance.market_size);
}

LogLogFit fit_loglog(std::span<const RegretEstimate> points) {
  LogLogFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : points) {
    if (!(p.mean_regret > 0.0)) {
      std::ostringstream os;
      os << "n=" << p.market_size << ": mean regret " << p.mean_regret
         << " is not positive; excluded from the log fit";
      fit.warnings.push_back(os.str());
      continue;
    }
    xs.push_back(std::log(static_cast<double>(p.market_size)));
    ys.push_back(std::log(p.mean_regret));
  }
  fit.points_used = xs.size();
  if (xs.size() < 2) throw std::domain_error("fit_loglog: fewer than two positive regret points");

  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::domain_error("fit_loglog: all n values are equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

namespace {

void require_distinct(std::span<const std::int64_t> n_values) {
  const std::set<std::int64_t> distinct(n_values.begin(), n_values.end());
  if (distinct.size() < 3) throw std::invalid_argument("sweep: needs at least three distinct n values");
}

}  // namespace

RegretReport sweep(const std::string& policy_label, std::span<const std::int64_t> n_values,
                   const std::function<RegretEstimate(std::int64_t)>& estimator) {
  require_distinct(n_values);
  RegretReport report;
  report.policy = policy_label;
  for (std::int64_t n : n_values) report.per_n.push_back(estimator(n));
  report.fit = fit_loglog(report.per_n);
  return report;
}

RegretReport sweep(const ProblemInstance& instance_template, const PolicyConfig& policy,
                   std::span<const std::int64_t> n_values, std::int64_t replications,
                   std::uint64_t root_seed, int workers) {
  if (policy.kind == PolicyKind::Synthetic) {
    policy.validate();
    return sweep(policy.label(), n_values, [&](std::int64_t n) {
      RegretEstimate e;
      e.market_size = n;
      e.replications = replications;
      e.benchmark = deterministic_value(instance_template.demand, instance_template.inventory,
                                        instance_template.horizon, n);
      e.mean_regret = policy.synthetic_constant / std::sqrt(static_cast<double>(n));
      e.mean_revenue = e.benchmark * (1.0 - e.mean_regret);
      return e;
    });
  }
  return sweep(policy.label(), n_values, [&](std::int64_t n) {
    ProblemInstance instance = instance_template;
    instance.market_size = n;
    return estimate_regret(instance, policy, replications, root_seed, workers);
  });
}

std::vector<std::string> check_report(const RegretReport& report) {
  std::vector<std::string> violations;
  for (const auto& e : report.per_n) {
    std::ostringstream os;
    os << report.policy << " n=" << e.market_size << ": ";
    const double revenue_se = e.std_error * e.benchmark;
    if (e.mean_revenue > e.benchmark + 4.0 * revenue_se)
      violations.push_back(os.str() + "mean realised revenue exceeds J^D + 4 SE");
    if (e.mean_revenue < 0.0) violations.push_back(os.str() + "mean realised revenue is negative");
    if (e.mean_regret > 1.0 + 1e-12) violations.push_back(os.str() + "regret exceeds 1");
    if (e.std_error < 0.0) violations.push_back(os.str() + "negative standard error");
  }
  return violations;
}

void write_regret_csv(std::ostream& os, std::span<const RegretReport> reports) {
  os << "n,policy,replications,mean_regret,std_error\n";
  for (const auto& r : reports) {
    for (const auto& e : r.per_n) {
      os << e.market_size << ',' << r.policy << ',' << e.replications << ','
         << format_double(e.mean_regret) << ',' << format_double(e.std_error) << '\n';
    }
  }
}

void write_slope_csv(std::ostream& os, std::span<const RegretReport> reports) {
  os << "policy,slope,intercept,r_squared\n";
  for (const auto& r : reports) {
    os << r.policy << ',' << format_double(r.fit.slope) << ',' << format_double(r.fit.intercept)
       << ',' << format_double(r.fit.r_squared) << '\n';
  }
}

}  // namespace dynprice
