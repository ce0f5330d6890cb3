#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynprice/demand.hpp"
#include "dynprice/policy.hpp"
#include "dynprice/schedule.hpp"

namespace dynprice {

/// What a learning policy may know about the market: everything except the
/// demand curve.
struct SellerView {
  double price_floor = 0.0;
  double price_ceil = 0.0;
  double inventory = 0.0;
  double horizon = 1.0;
  std::int64_t market_size = 1;

  static SellerView of(const ProblemInstance& instance);
  double target_rate() const { return inventory / horizon; }
};

struct PriceInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double p, double slack = 1e-12) const { return p >= lo - slack && p <= hi + slack; }
  friend bool operator==(const PriceInterval&, const PriceInterval&) = default;
};

/// Step-2 shrink: [c - (log n / 3) g, c + (2 log n / 3) g] with
/// g = width / kappa, truncated to the feasible range.
PriceInterval shrink_unconstrained(double center, const PriceInterval& current, int kappa,
                                   double log_n, const PriceInterval& feasible);

/// Symmetric shrink c -/+ (log n / 2) g, truncated to the feasible range.
PriceInterval shrink_symmetric(double center, const PriceInterval& current, int kappa,
                               double log_n, const PriceInterval& feasible);

/// Transition test: the constrained estimate exceeds the unconstrained one
/// by more than 2 sqrt(log n) grid steps.
bool constrained_price_dominates(double p_hat_c, double p_hat_u, const PriceInterval& current,
                                 int kappa, double log_n);

/// Left endpoints of the kappa equal cells of `interval`.
std::vector<double> grid_prices(const PriceInterval& interval, int kappa);

/// Where Step 3 restarts after the transition test fires.
enum class Step3Interval {
  FullInterval,  // restart from [p_lo, p_hi]
  LastInterval,  // continue from the interval tested when the test fired
};

std::string to_string(Step3Interval s);
Step3Interval parse_step3_interval(const std::string& text);

enum class Track { Unconstrained, Constrained, Single };

/// One completed grid-testing period.
struct IterationRecord {
  Track track = Track::Unconstrained;
  int index = 0;
  PriceInterval interval;
  int kappa = 0;
  double period = 0.0;  // length of the learning period actually used
  double p_hat_u = 0.0;
  double p_hat_c = 0.0;
  double chosen = 0.0;  // p_hat_i (Step 2 / single track) or q_hat_i (Step 3)
};

struct LearningDiagnostics {
  std::vector<IterationRecord> iterations;
  bool entered_step3 = false;
  std::optional<int> transition_iteration;  // i0
  std::optional<double> applied_price;      // p~ or q~ (or p_hat_N)
  bool time_guard = false;                  // a period would have overrun T
  bool degenerate_interval = false;         // truncation collapsed the interval
  std::optional<double> estimate_before_adjustment;  // p_hat at Step 4(a)

  /// True when `price` lies inside every tested interval.
  bool intervals_contain(double price, double slack = 1e-9) const;
};

struct DpaOptions {
  double delta = 0.49;
  LogMode log_mode = LogMode::Practical;
  Step3Interval step3_interval = Step3Interval::LastInterval;
};

/// Shared grid-testing machinery: issues kappa equal-length segments per
/// period, then hands the observed counts to complete_period().
class GridLearningPolicy : public PricingPolicy {
 public:
  std::optional<SegmentRequest> next_segment(std::optional<std::int64_t> last_sales) final;

  const LearningDiagnostics& diagnostics() const { return diagnostics_; }

 protected:
  struct Period {
    Track track = Track::Unconstrained;
    int index = 0;
    PriceInterval interval;
    int kappa = 0;
    double period = 0.0;
    double segment = 0.0;
    std::vector<double> prices;
    std::vector<std::int64_t> sales;
  };

  struct Estimates {
    double p_hat_u = 0.0;
    double p_hat_c = 0.0;
    double granularity = 0.0;
  };

  explicit GridLearningPolicy(const SellerView& view);

  virtual void complete_period(const Period& period, const Estimates& est) = 0;

  /// Starts a period of nominal (unit-horizon) length `tau`. Returns false when
  /// it would overrun the horizon; with `may_compress` it is shortened to fit
  /// instead.
  bool start_period(Track track, int index, const PriceInterval& interval, int kappa, double tau,
                    bool may_compress);
  void apply(double price);
  bool degenerate(const PriceInterval& interval, int kappa) const;
  IterationRecord record(const Period& period, const Estimates& est, double chosen) const;

  SellerView view_;
  PriceInterval feasible_;
  double log_n_;
  LearningDiagnostics diagnostics_;

 private:
  Estimates estimate(const Period& period) const;

  std::optional<Period> period_;
  std::size_t issued_ = 0;
  std::optional<double> apply_price_;
  bool apply_issued_ = false;
  double elapsed_ = 0.0;
};

/// Two-track learning-while-doing policy for regular demand.
class DpaPolicy final : public GridLearningPolicy {
 public:
  DpaPolicy(const SellerView& view, DpaOptions options);

  std::string name() const override { return "dpa"; }
  const LearningSchedule& schedule() const { return schedule_; }

 private:
  void complete_period(const Period& period, const Estimates& est) override;
  void finish_unconstrained(double p_hat, double granularity);

  DpaOptions options_;
  LearningSchedule schedule_;
  std::optional<double> transition_p_hat_c_;
};

/// Single-track variant for demand with a kink at the revenue maximiser.
class Dpa2Policy final : public GridLearningPolicy {
 public:
  Dpa2Policy(const SellerView& view, double delta, LogMode log_mode);

  std::string name() const override { return "dpa2"; }
  const TrackSchedule& schedule() const { return schedule_; }

 private:
  void complete_period(const Period& period, const Estimates& est) override;

  TrackSchedule schedule_;
};

}  // namespace dynprice
