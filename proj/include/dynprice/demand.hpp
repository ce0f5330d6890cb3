#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dynprice {

/// A posted price: either a finite value in [p_lo, p_hi] or the symbolic
/// shut-off price at which demand is exactly zero.
class Price {
 public:
  constexpr Price() = default;
  constexpr explicit Price(double value) : value_(value) {}

  static constexpr Price cutoff() {
    Price p;
    p.cutoff_ = true;
    return p;
  }

  constexpr bool is_cutoff() const { return cutoff_; }
  /// Finite value; 0 for the cutoff price so revenue accounting stays exact.
  constexpr double value() const { return cutoff_ ? 0.0 : value_; }

  friend constexpr bool operator==(const Price&, const Price&) = default;

 private:
  double value_ = 0.0;
  bool cutoff_ = false;
};

/// Assumption-A constants of a demand curve.
struct RegularityConstants {
  double rate_bound = 0.0;        // M
  double lipschitz = 0.0;         // K
  double curvature_upper = 0.0;   // m_L: r''(lambda) >= -m_L
  double curvature_lower = 0.0;   // m_U: r''(lambda) <= -m_U

  friend bool operator==(const RegularityConstants&, const RegularityConstants&) = default;
};

struct LinearDemand {
  double intercept;  // a
  double slope;      // b, rate = a - b p
};

struct ExponentialDemand {
  double scale;  // a
  double decay;  // b, rate = a exp(-b p)
};

struct LogitDemand {
  double shift;  // a
  double slope;  // b, rate = e^{-a-bp} / (1 + e^{-a-bp})
};

/// Linear family 1/2 + z - z p used for the lower-bound construction.
struct WorstCaseLinearDemand {
  double z;
};

/// Piecewise-linear interpolation of (price, rate) samples sorted by price.
struct TabulatedDemand {
  std::vector<std::pair<double, double>> points;
};

using DemandFamily = std::variant<LinearDemand, ExponentialDemand, LogitDemand,
                                  WorstCaseLinearDemand, TabulatedDemand>;

/// Immutable regular demand curve on a price interval.
///
/// The curve is validated on construction: it must be non-negative and
/// strictly decreasing on [price_floor, price_ceil]. Built-in families derive
/// their regularity constants in closed form; tabulated curves require the
/// caller to supply them.
class DemandModel {
 public:
  DemandModel(DemandFamily family, double price_floor, double price_ceil,
              std::optional<RegularityConstants> constants = std::nullopt);

  static DemandModel linear(double a, double b, double price_floor, double price_ceil);
  static DemandModel exponential(double a, double b, double price_floor, double price_ceil);
  static DemandModel logit(double a, double b, double price_floor, double price_ceil);
  /// Worst-case family on its canonical price range [1/2, 3/2].
  static DemandModel worst_case(double z);
  static DemandModel tabulated(std::vector<std::pair<double, double>> points,
                               RegularityConstants constants);
  /// Tabulated curve with constants read off the piece slopes.
  static DemandModel tabulated(std::vector<std::pair<double, double>> points);

  const DemandFamily& family() const { return family_; }
  double price_floor() const { return price_floor_; }
  double price_ceil() const { return price_ceil_; }
  const RegularityConstants& constants() const { return constants_; }

  /// lambda(p) for a finite p in the closed price range; no domain checks.
  double rate_at(double p) const;
  /// gamma(lambda); inverse demand clamped to the price range.
  double inverse(double rate) const;
  /// Revenue rate p * lambda(p).
  double revenue_at(double p) const { return p * rate_at(p); }
  /// r(lambda) = lambda * gamma(lambda).
  double revenue_of_rate(double rate) const { return rate * inverse(rate); }

  bool contains(double p) const;

  std::string describe() const;

 private:
  DemandFamily family_;
  double price_floor_;
  double price_ceil_;
  RegularityConstants constants_;
};

/// Constants of a piecewise-linear curve: r'' = -2/|s| on a piece of slope s.
RegularityConstants piecewise_linear_constants(
    const std::vector<std::pair<double, double>>& points);

/// Selling problem in the scaling regime: inventory n*x, demand n*lambda.
struct ProblemInstance {
  DemandModel demand;
  double inventory = 0.0;  // x
  double horizon = 1.0;    // T
  std::int64_t market_size = 1;

  /// floor(n * x): integer starting stock of the scaled problem.
  std::int64_t scaled_inventory() const;
  void validate() const;
};

/// lambda(p), zero at the cutoff price. Throws std::domain_error outside the
/// feasible set.
double rate(const DemandModel& model, Price p);

/// Revenue-maximising price over the price range.
double solve_pu(const DemandModel& model);

/// Price whose demand rate is closest to x / T, clamped to the price range.
double solve_pc(const DemandModel& model, double inventory, double horizon);

/// max(p^u, p^c): optimal fixed price of the fluid problem.
double deterministic_price(const DemandModel& model, double inventory, double horizon);

/// Fluid-relaxation revenue n * p^D * min(T lambda(p^D), x).
double deterministic_value(const DemandModel& model, double inventory, double horizon,
                           std::int64_t market_size = 1);

inline double deterministic_value(const ProblemInstance& instance) {
  return deterministic_value(instance.demand, instance.inventory, instance.horizon,
                             instance.market_size);
}

/// Demand as a function of an advertising-type control a, sold at a fixed
/// list price p. Affine curves map onto the linear family exactly; sampled
/// curves become tabulated models.
struct AffineIntensity {
  double intercept;
  double slope;  // rate = intercept + slope * a
  double control_min;
  double control_max;
};

struct SampledIntensity {
  std::vector<std::pair<double, double>> points;  // (a, rate)
  RegularityConstants constants;
};

using IntensityCurve = std::variant<AffineIntensity, SampledIntensity>;

/// Re-expresses margin p - a as the price variable w so the pricing machinery
/// applies unchanged: lambda~(w) = lambda(p - w).
DemandModel advertisement_transform(double fixed_price, const IntensityCurve& curve);

}  // namespace dynprice
