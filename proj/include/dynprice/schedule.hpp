#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dynprice {

/// Theoretical keeps every log n factor of the asymptotic schedule.
/// Practical drops the log n factors from the learning-period lengths and
/// from the stopping rule, the variant used for finite-n experiments.
enum class LogMode { Theoretical, Practical };

std::string to_string(LogMode mode);
LogMode parse_log_mode(const std::string& text);

/// Learning periods for one shrinking track. Period lengths are fractions of
/// a unit horizon.
struct TrackSchedule {
  std::vector<double> tau;
  std::vector<int> kappa;

  int count() const { return static_cast<int>(tau.size()); }
};

struct LearningSchedule {
  TrackSchedule unconstrained;  // Step 2: learn p^u or detect p^c > p^u
  TrackSchedule constrained;    // Step 3: learn p^c
  double delta = 0.0;
  LogMode log_mode = LogMode::Practical;
  std::int64_t market_size = 0;
};

/// Iteration caps independent of n: floor(log_{3/5}((1-2d)/(1-d))) + 1 and
/// the same with base 2/3.
int max_iterations_unconstrained(double delta);
int max_iterations_constrained(double delta);

/// Closed-form interval width of iteration i (1-based) on a unit price range,
/// before truncation: n^{-(1/2)(1-d)(1-(3/5)^{i-1})} and
/// n^{-(1-d)(1-(2/3)^{i-1})} respectively.
double unconstrained_width(std::int64_t n, double delta, int i);
double constrained_width(std::int64_t n, double delta, int i);

/// Schedule of the two-track algorithm. Throws std::domain_error unless
/// n >= 2 and 0 < delta < 1/2.
LearningSchedule build_schedule(std::int64_t n, double delta, LogMode mode);

/// Single-track schedule of the kink-case variant.
TrackSchedule build_single_track_schedule(std::int64_t n, double delta, LogMode mode);

/// Indices where integer rounding broke tau increasing / kappa decreasing.
std::vector<std::string> schedule_order_violations(const TrackSchedule& track);

}  // namespace dynprice
