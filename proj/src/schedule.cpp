#include "dynprice/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dynprice {
namespace {

struct TrackShape {
  double ratio;           // 3/5 or 2/3
  double kappa_exponent;  // 1/5 or 1/3
  double tau_log_power;   // log power of tau_i for i >= 2
  double tau1_log_power;  // log power of tau_1
  double stop_log_power;  // log power on the right of the stopping rule
};

// tau_1 = n^{-d} (log n)^{3.5}; tau_i = n^{1-2d-(1-d)(3/5)^{i-1}} (log n)^5.
// Plugging widths and kappas into the stopping rule gives
// n^{2d-1+(1-d)(3/5)^l} < (log n)^5.
constexpr TrackShape kUnconstrained{0.6, 0.2, 5.0, 3.5, 5.0};
// tau_1 = n^{-d} (log n)^{2.5}; tau_i uses (log n)^3; stop at (log n)^3.
constexpr TrackShape kConstrained{2.0 / 3.0, 1.0 / 3.0, 3.0, 2.5, 3.0};
// Kink variant: tau_i = n^{1-2d-(1-d)(2/3)^{i-1}} (log n)^3 for all i; the
// stopping rule reduces to n^{2d-1+(1-d)(2/3)^l} < (log n)^{3.5}.
constexpr TrackShape kSingleTrack{2.0 / 3.0, 1.0 / 3.0, 3.0, 3.0, 3.5};

int iteration_cap(double ratio, double delta) {
  return static_cast<int>(std::floor(std::log((1.0 - 2.0 * delta) / (1.0 - delta)) /
                                     std::log(ratio))) +
         1;
}

void check_inputs(std::int64_t n, double delta) {
  if (n < 2) throw std::domain_error("schedule: market size must be at least 2");
  if (!(delta > 0.0) || !(delta < 0.5))
    throw std::domain_error("schedule: delta must lie in (0, 1/2)");
}

TrackSchedule build_track(std::int64_t n, double delta, LogMode mode, const TrackShape& shape) {
  const double log_n = std::log(static_cast<double>(n));
  const bool with_logs = mode == LogMode::Theoretical;
  const int cap = iteration_cap(shape.ratio, delta);

  int count = cap;
  const double stop_power = with_logs ? shape.stop_log_power : 0.0;
  for (int l = 1; l <= cap; ++l) {
    const double lhs = (2.0 * delta - 1.0 + (1.0 - delta) * std::pow(shape.ratio, l)) * log_n;
    if (lhs < stop_power * std::log(log_n)) {
      count = l;
      break;
    }
  }

  TrackSchedule track;
  for (int i = 1; i <= count; ++i) {
    const double geometric = std::pow(shape.ratio, i - 1);
    double tau = std::pow(static_cast<double>(n), 1.0 - 2.0 * delta - (1.0 - delta) * geometric);
    if (with_logs) tau *= std::pow(log_n, i == 1 ? shape.tau1_log_power : shape.tau_log_power);
    const double kappa_real =
        std::pow(static_cast<double>(n), shape.kappa_exponent * geometric * (1.0 - delta)) * log_n;
    track.tau.push_back(tau);
    track.kappa.push_back(std::max(2, static_cast<int>(std::floor(kappa_real))));
  }
  return track;
}

}  // namespace

std::string to_string(LogMode mode) {
  return mode == LogMode::Theoretical ? "theoretical" : "practical";
}

LogMode parse_log_mode(const std::string& text) {
  if (text == "theoretical") return LogMode::Theoretical;
  if (text == "practical") return LogMode::Practical;
  throw std::invalid_argument("unknown log_mode '" + text + "' (expected theoretical|practical)");
}

int max_iterations_unconstrained(double delta) {
  check_inputs(2, delta);
  return iteration_cap(kUnconstrained.ratio, delta);
}

int max_iterations_constrained(double delta) {
  check_inputs(2, delta);
  return iteration_cap(kConstrained.ratio, delta);
}

double unconstrained_width(std::int64_t n, double delta, int i) {
  return std::pow(static_cast<double>(n),
                  -0.5 * (1.0 - delta) * (1.0 - std::pow(kUnconstrained.ratio, i - 1)));
}

double constrained_width(std::int64_t n, double delta, int i) {
  return std::pow(static_cast<double>(n),
                  -(1.0 - delta) * (1.0 - std::pow(kConstrained.ratio, i - 1)));
}

LearningSchedule build_schedule(std::int64_t n, double delta, LogMode mode) {
  check_inputs(n, delta);
  LearningSchedule s;
  s.unconstrained = build_track(n, delta, mode, kUnconstrained);
  s.constrained = build_track(n, delta, mode, kConstrained);
  s.delta = delta;
  s.log_mode = mode;
  s.market_size = n;
  return s;
}

TrackSchedule build_single_track_schedule(std::int64_t n, double delta, LogMode mode) {
  check_inputs(n, delta);
  return build_track(n, delta, mode, kSingleTrack);
}

std::vector<std::string> schedule_order_violations(const TrackSchedule& track) {
  std::vector<std::string> out;
  for (int i = 1; i < track.count(); ++i) {
    if (!(track.tau[i] > track.tau[i - 1])) {
      std::ostringstream os;
      os << "tau not increasing at i=" << i + 1;
      out.push_back(os.str());
    }
    if (!(track.kappa[i] < track.kappa[i - 1])) {
      std::ostringstream os;
      os << "kappa not decreasing at i=" << i + 1 << " (" << track.kappa[i - 1] << " -> "
         << track.kappa[i] << ")";
      out.push_back(os.str());
    }
  }
  return out;
}

}  // namespace dynprice
