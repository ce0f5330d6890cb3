#include "dynprice/dpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dynprice/numerics.hpp"

namespace dynprice {
namespace {

PriceInterval truncate(PriceInterval in, const PriceInterval& feasible) {
  in.lo = std::max(in.lo, feasible.lo);
  in.hi = std::min(in.hi, feasible.hi);
  return in;
}

}  // namespace

SellerView SellerView::of(const ProblemInstance& instance) {
  instance.validate();
  return {instance.demand.price_floor(), instance.demand.price_ceil(), instance.inventory,
          instance.horizon, instance.market_size};
}

PriceInterval shrink_unconstrained(double center, const PriceInterval& current, int kappa,
                                   double log_n, const PriceInterval& feasible) {
  const double g = current.width() / kappa;
  return truncate({center - log_n / 3.0 * g, center + 2.0 * log_n / 3.0 * g}, feasible);
}

PriceInterval shrink_symmetric(double center, const PriceInterval& current, int kappa,
                               double log_n, const PriceInterval& feasible) {
  const double g = current.width() / kappa;
  return truncate({center - log_n / 2.0 * g, center + log_n / 2.0 * g}, feasible);
}

bool constrained_price_dominates(double p_hat_c, double p_hat_u, const PriceInterval& current,
                                 int kappa, double log_n) {
  return p_hat_c > p_hat_u + 2.0 * std::sqrt(log_n) * current.width() / kappa;
}

std::vector<double> grid_prices(const PriceInterval& interval, int kappa) {
  if (kappa < 1) throw std::invalid_argument("grid_prices: kappa must be positive");
  std::vector<double> prices(static_cast<std::size_t>(kappa));
  for (int j = 0; j < kappa; ++j) prices[j] = interval.lo + interval.width() * j / kappa;
  return prices;
}

std::string to_string(Step3Interval s) {
  return s == Step3Interval::FullInterval ? "full" : "last";
}

Step3Interval parse_step3_interval(const std::string& text) {
  if (text == "full") return Step3Interval::FullInterval;
  if (text == "last") return Step3Interval::LastInterval;
  throw std::invalid_argument("unknown step3_interval '" + text + "' (expected full|last)");
}

bool LearningDiagnostics::intervals_contain(double price, double slack) const {
  return std::all_of(iterations.begin(), iterations.end(),
                     [&](const IterationRecord& r) { return r.interval.contains(price, slack); });
}

// --- GridLearningPolicy -----------------------------------------------------

GridLearningPolicy::GridLearningPolicy(const SellerView& view)
    : view_(view),
      feasible_{view.price_floor, view.price_ceil},
      log_n_(std::log(static_cast<double>(view.market_size))) {
  if (view.market_size < 2)
    throw std::domain_error("learning policies need a market size of at least 2");
}

std::optional<SegmentRequest> GridLearningPolicy::next_segment(
    std::optional<std::int64_t> last_sales) {
  if (last_sales && period_ && period_->sales.size() < issued_) {
    period_->sales.push_back(*last_sales);
    if (period_->sales.size() == period_->prices.size()) {
      const Period done = std::move(*period_);
      period_.reset();
      complete_period(done, estimate(done));
    }
  }

  if (period_) {
    const double price = period_->prices[issued_];
    ++issued_;
    elapsed_ += period_->segment;
    return SegmentRequest{Price(price), period_->segment};
  }
  if (apply_price_ && !apply_issued_) {
    apply_issued_ = true;
    const double remaining = std::max(0.0, view_.horizon - elapsed_);
    elapsed_ = view_.horizon;
    return SegmentRequest{Price(*apply_price_), remaining};
  }
  return std::nullopt;
}

bool GridLearningPolicy::start_period(Track track, int index, const PriceInterval& interval,
                                      int kappa, double tau, bool may_compress) {
  double length = tau * view_.horizon;
  const double remaining = view_.horizon - elapsed_;
  if (length > remaining * (1.0 + 1e-12)) {
    diagnostics_.time_guard = true;
    if (!may_compress || remaining <= 0.0) return false;
    length = remaining;
  }
  Period p;
  p.track = track;
  p.index = index;
  p.interval = interval;
  p.kappa = kappa;
  p.period = length;
  p.segment = length / kappa;
  p.prices = grid_prices(interval, kappa);
  p.sales.reserve(p.prices.size());
  period_ = std::move(p);
  issued_ = 0;
  return true;
}

void GridLearningPolicy::apply(double price) {
  apply_price_ = std::clamp(price, feasible_.lo, feasible_.hi);
  diagnostics_.applied_price = apply_price_;
}

bool GridLearningPolicy::degenerate(const PriceInterval& interval, int kappa) const {
  const double scale = std::max(1.0, std::abs(interval.hi));
  return interval.width() <= std::numeric_limits<double>::epsilon() * scale * kappa;
}

GridLearningPolicy::Estimates GridLearningPolicy::estimate(const Period& period) const {
  const std::size_t k = period.prices.size();
  std::vector<double> revenue(k);
  std::vector<double> gap(k);
  const double exposure = static_cast<double>(view_.market_size) * period.segment;
  for (std::size_t j = 0; j < k; ++j) {
    const double d_hat = static_cast<double>(period.sales[j]) / exposure;
    revenue[j] = period.prices[j] * d_hat;
    gap[j] = std::abs(d_hat - view_.target_rate());
  }
  Estimates est;
  est.p_hat_u = period.prices[numerics::argmax_first(revenue)];
  est.p_hat_c = period.prices[numerics::argmin_first(gap)];
  est.granularity = period.interval.width() / period.kappa;
  return est;
}

IterationRecord GridLearningPolicy::record(const Period& period, const Estimates& est,
                                           double chosen) const {
  return {period.track, period.index,   period.interval, period.kappa,
          period.period, est.p_hat_u, est.p_hat_c,     chosen};
}

// --- DpaPolicy ---------------------------------------------------------------

DpaPolicy::DpaPolicy(const SellerView& view, DpaOptions options)
    : GridLearningPolicy(view),
      options_(options),
      schedule_(build_schedule(view.market_size, options.delta, options.log_mode)) {
  const auto& u = schedule_.unconstrained;
  start_period(Track::Unconstrained, 1, feasible_, u.kappa[0], u.tau[0], /*may_compress=*/true);
}

void DpaPolicy::complete_period(const Period& period, const Estimates& est) {
  if (period.track == Track::Unconstrained) {
    if (constrained_price_dominates(est.p_hat_c, est.p_hat_u, period.interval, period.kappa,
                                    log_n_)) {
      diagnostics_.iterations.push_back(record(period, est, est.p_hat_c));
      diagnostics_.entered_step3 = true;
      diagnostics_.transition_iteration = period.index;
      transition_p_hat_c_ = est.p_hat_c;
      const PriceInterval start =
          options_.step3_interval == Step3Interval::FullInterval ? feasible_ : period.interval;
      const auto& c = schedule_.constrained;
      if (degenerate(start, c.kappa[0]) ||
          !start_period(Track::Constrained, 1, start, c.kappa[0], c.tau[0], false)) {
        diagnostics_.degenerate_interval |= degenerate(start, c.kappa[0]);
        apply(est.p_hat_c);
      }
      return;
    }

    const double p_hat = std::max(est.p_hat_c, est.p_hat_u);
    diagnostics_.iterations.push_back(record(period, est, p_hat));
    const auto& u = schedule_.unconstrained;
    if (period.index >= u.count()) {
      finish_unconstrained(p_hat, est.granularity);
      return;
    }
    const PriceInterval next =
        shrink_unconstrained(p_hat, period.interval, period.kappa, log_n_, feasible_);
    const int i = period.index;  // next period is i + 1, stored at [i]
    if (degenerate(next, u.kappa[i])) {
      diagnostics_.degenerate_interval = true;
      finish_unconstrained(p_hat, est.granularity);
      return;
    }
    if (!start_period(Track::Unconstrained, i + 1, next, u.kappa[i], u.tau[i], false))
      finish_unconstrained(p_hat, est.granularity);
    return;
  }

  // Step 3
  const double q_hat = est.p_hat_c;
  diagnostics_.iterations.push_back(record(period, est, q_hat));
  const auto& c = schedule_.constrained;
  if (period.index >= c.count()) {
    apply(q_hat);
    return;
  }
  const PriceInterval next = shrink_symmetric(q_hat, period.interval, period.kappa, log_n_, feasible_);
  const int i = period.index;
  if (degenerate(next, c.kappa[i])) {
    diagnostics_.degenerate_interval = true;
    apply(q_hat);
    return;
  }
  if (!start_period(Track::Constrained, i + 1, next, c.kappa[i], c.tau[i], false)) apply(q_hat);
}

void DpaPolicy::finish_unconstrained(double p_hat, double granularity) {
  // Step 4(a): bias upward by 2 sqrt(log n) grid steps to protect inventory
  diagnostics_.estimate_before_adjustment = p_hat;
  apply(p_hat + 2.0 * std::sqrt(log_n_) * granularity);
}

// --- Dpa2Policy --------------------------------------------------------------

Dpa2Policy::Dpa2Policy(const SellerView& view, double delta, LogMode log_mode)
    : GridLearningPolicy(view),
      schedule_(build_single_track_schedule(view.market_size, delta, log_mode)) {
  start_period(Track::Single, 1, feasible_, schedule_.kappa[0], schedule_.tau[0], true);
}

void Dpa2Policy::complete_period(const Period& period, const Estimates& est) {
  const double p_hat = std::max(est.p_hat_c, est.p_hat_u);
  diagnostics_.iterations.push_back(record(period, est, p_hat));
  if (period.index >= schedule_.count()) {
    apply(p_hat);
    return;
  }
  const PriceInterval next = shrink_symmetric(p_hat, period.interval, period.kappa, log_n_, feasible_);
  const int i = period.index;
  if (degenerate(next, schedule_.kappa[i])) {
    diagnostics_.degenerate_interval = true;
    apply(p_hat);
    return;
  }
  if (!start_period(Track::Single, i + 1, next, schedule_.kappa[i], schedule_.tau[i], false))
    apply(p_hat);
}

}  // namespace dynprice
