#include "dynprice/demand.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dynprice/numerics.hpp"

namespace dynprice {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kValidationSamples = 2048;
constexpr int kCoarseScan = 1024;
constexpr int kDenseScan = 1 << 17;

double interpolate(const std::vector<std::pair<double, double>>& pts, double p) {
  if (p <= pts.front().first) return pts.front().second;
  if (p >= pts.back().first) return pts.back().second;
  auto hi = std::upper_bound(pts.begin(), pts.end(), p,
                             [](double v, const auto& pt) { return v < pt.first; });
  auto lo = hi - 1;
  const double w = (p - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

double inverse_interpolate(const std::vector<std::pair<double, double>>& pts, double r) {
  // rates are strictly decreasing along the samples
  if (r >= pts.front().second) return pts.front().first;
  if (r <= pts.back().second) return pts.back().first;
  auto hi = std::lower_bound(pts.begin(), pts.end(), r,
                             [](const auto& pt, double v) { return pt.second > v; });
  auto lo = hi - 1;
  const double w = (lo->second - r) / (lo->second - hi->second);
  return lo->first + w * (hi->first - lo->first);
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

RegularityConstants linear_constants(double a, double b, double lo, double hi) {
  RegularityConstants c;
  c.rate_bound = a - b * lo;
  c.lipschitz = std::max({b, 1.0 / b, a + 2.0 * b * hi});
  // r(lambda) = lambda (a - lambda) / b has r'' = -2/b everywhere
  c.curvature_upper = 2.0 / b;
  c.curvature_lower = 2.0 / b;
  return c;
}

RegularityConstants exponential_constants(double a, double b, double lo, double hi) {
  RegularityConstants c;
  c.rate_bound = a * std::exp(-b * lo);
  c.lipschitz = std::max({a * b, a + a * b * hi, std::exp(b * hi) / (a * b)});
  // r''(lambda) = -1 / (b lambda) over lambda in [a e^{-b hi}, a e^{-b lo}]
  c.curvature_upper = std::exp(b * hi) / (a * b);
  c.curvature_lower = std::exp(b * lo) / (a * b);
  return c;
}

RegularityConstants logit_constants(double a, double b, double lo, double hi) {
  auto lam = [&](double p) { return logistic(-a - b * p); };
  RegularityConstants c;
  c.rate_bound = lam(lo);
  double curv_max = 0.0;
  double curv_min = INFINITY;
  double inv_lip = 0.0;
  for (int k = 0; k <= kValidationSamples; ++k) {
    const double p = lo + (hi - lo) * k / kValidationSamples;
    const double l = lam(p);
    const double curv = 1.0 / (b * l * (1.0 - l)) + 1.0 / (b * (1.0 - l) * (1.0 - l));
    curv_max = std::max(curv_max, curv);
    curv_min = std::min(curv_min, curv);
    inv_lip = std::max(inv_lip, 1.0 / (b * l * (1.0 - l)));
  }
  c.lipschitz = std::max({b / 4.0, 1.0 + b * hi, inv_lip});
  c.curvature_upper = curv_max;
  c.curvature_lower = curv_min;
  return c;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("DemandModel: " + what);
}

}  // namespace

DemandModel::DemandModel(DemandFamily family, double price_floor, double price_ceil,
                         std::optional<RegularityConstants> constants)
    : family_(std::move(family)), price_floor_(price_floor), price_ceil_(price_ceil) {
  require(std::isfinite(price_floor_) && std::isfinite(price_ceil_),
          "price bounds must be finite");
  require(price_floor_ >= 0.0, "price_floor must be non-negative");
  require(price_floor_ < price_ceil_, "price_floor must be below price_ceil");

  const RegularityConstants derived = std::visit(
      overloaded{
          [&](const LinearDemand& d) {
            require(d.intercept > 0 && d.slope > 0, "linear demand needs a > 0, b > 0");
            return linear_constants(d.intercept, d.slope, price_floor_, price_ceil_);
          },
          [&](const ExponentialDemand& d) {
            require(d.scale > 0 && d.decay > 0, "exponential demand needs a > 0, b > 0");
            return exponential_constants(d.scale, d.decay, price_floor_, price_ceil_);
          },
          [&](const LogitDemand& d) {
            require(d.slope > 0, "logit demand needs b > 0");
            return logit_constants(d.shift, d.slope, price_floor_, price_ceil_);
          },
          [&](const WorstCaseLinearDemand& d) {
            require(d.z > 0, "worst-case demand needs z > 0");
            return linear_constants(0.5 + d.z, d.z, price_floor_, price_ceil_);
          },
          [&](const TabulatedDemand& d) {
            require(d.points.size() >= 2, "tabulated demand needs at least two samples");
            for (std::size_t i = 1; i < d.points.size(); ++i) {
              require(d.points[i].first > d.points[i - 1].first,
                      "tabulated prices must be strictly increasing");
              require(d.points[i].second < d.points[i - 1].second,
                      "tabulated rates must be strictly decreasing");
            }
            require(d.points.front().first <= price_floor_ && d.points.back().first >= price_ceil_,
                    "tabulated samples must cover the price range");
            require(constants.has_value(), "tabulated demand requires regularity constants");
            return *constants;
          },
      },
      family_);
  constants_ = constants.value_or(derived);

  double prev = rate_at(price_floor_);
  require(prev >= 0.0, "rate must be non-negative on the price range");
  for (int k = 1; k <= kValidationSamples; ++k) {
    const double p = price_floor_ + (price_ceil_ - price_floor_) * k / kValidationSamples;
    const double cur = rate_at(p);
    require(cur >= 0.0, "rate must be non-negative on the price range");
    require(cur < prev, "rate must be strictly decreasing on the price range");
    prev = cur;
  }
}

DemandModel DemandModel::linear(double a, double b, double lo, double hi) {
  return DemandModel(LinearDemand{a, b}, lo, hi);
}

DemandModel DemandModel::exponential(double a, double b, double lo, double hi) {
  return DemandModel(ExponentialDemand{a, b}, lo, hi);
}

DemandModel DemandModel::logit(double a, double b, double lo, double hi) {
  return DemandModel(LogitDemand{a, b}, lo, hi);
}

DemandModel DemandModel::worst_case(double z) {
  return DemandModel(WorstCaseLinearDemand{z}, 0.5, 1.5);
}

DemandModel DemandModel::tabulated(std::vector<std::pair<double, double>> points,
                                   RegularityConstants constants) {
  if (points.size() < 2) throw std::invalid_argument("DemandModel: too few samples");
  const double lo = points.front().first;
  const double hi = points.back().first;
  return DemandModel(TabulatedDemand{std::move(points)}, lo, hi, constants);
}

DemandModel DemandModel::tabulated(std::vector<std::pair<double, double>> points) {
  const auto constants = piecewise_linear_constants(points);
  return tabulated(std::move(points), constants);
}

RegularityConstants piecewise_linear_constants(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("DemandModel: too few samples");
  RegularityConstants c;
  c.rate_bound = points.front().second;
  c.curvature_lower = INFINITY;
  const double hi = points.back().first;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double dp = points[i].first - points[i - 1].first;
    const double s = std::abs(points[i].second - points[i - 1].second) / dp;
    if (!(s > 0.0)) throw std::invalid_argument("DemandModel: flat tabulated piece");
    c.lipschitz = std::max({c.lipschitz, s, 1.0 / s, c.rate_bound + s * hi});
    c.curvature_upper = std::max(c.curvature_upper, 2.0 / s);
    c.curvature_lower = std::min(c.curvature_lower, 2.0 / s);
  }
  return c;
}

double DemandModel::rate_at(double p) const {
  return std::visit(
      overloaded{
          [p](const LinearDemand& d) { return d.intercept - d.slope * p; },
          [p](const ExponentialDemand& d) { return d.scale * std::exp(-d.decay * p); },
          [p](const LogitDemand& d) { return logistic(-d.shift - d.slope * p); },
          [p](const WorstCaseLinearDemand& d) { return 0.5 + d.z - d.z * p; },
          [p](const TabulatedDemand& d) { return interpolate(d.points, p); },
      },
      family_);
}

double DemandModel::inverse(double r) const {
  const double p = std::visit(
      overloaded{
          [r](const LinearDemand& d) { return (d.intercept - r) / d.slope; },
          [r](const ExponentialDemand& d) { return std::log(d.scale / r) / d.decay; },
          [r](const LogitDemand& d) { return (std::log((1.0 - r) / r) - d.shift) / d.slope; },
          [r](const WorstCaseLinearDemand& d) { return (0.5 + d.z - r) / d.z; },
          [r](const TabulatedDemand& d) { return inverse_interpolate(d.points, r); },
      },
      family_);
  return std::clamp(p, price_floor_, price_ceil_);
}

bool DemandModel::contains(double p) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(p));
  return p >= price_floor_ - slack && p <= price_ceil_ + slack;
}

std::string DemandModel::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{
                 [&](const LinearDemand& d) { os << "linear " << d.intercept << ' ' << d.slope; },
                 [&](const ExponentialDemand& d) {
                   os << "exponential " << d.scale << ' ' << d.decay;
                 },
                 [&](const LogitDemand& d) { os << "logit " << d.shift << ' ' << d.slope; },
                 [&](const WorstCaseLinearDemand& d) { os << "worstcase " << d.z; },
                 [&](const TabulatedDemand& d) {
                   os << "tabulated";
                   for (const auto& [p, r] : d.points) os << ' ' << p << ':' << r;
                 },
             },
             family_);
  os << " on [" << price_floor_ << ", " << price_ceil_ << "]";
  return os.str();
}

std::int64_t ProblemInstance::scaled_inventory() const {
  return static_cast<std::int64_t>(
      std::floor(static_cast<double>(market_size) * inventory + 1e-9));
}

void ProblemInstance::validate() const {
  if (!(inventory > 0.0) || !std::isfinite(inventory))
    throw std::invalid_argument("ProblemInstance: inventory must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("ProblemInstance: horizon must be positive");
  if (market_size < 1) throw std::invalid_argument("ProblemInstance: market_size must be >= 1");
}

double rate(const DemandModel& model, Price p) {
  if (p.is_cutoff()) return 0.0;
  if (!model.contains(p.value())) {
    std::ostringstream os;
    os << "rate: price " << p.value() << " outside [" << model.price_floor() << ", "
       << model.price_ceil() << "]";
    throw std::domain_error(os.str());
  }
  return model.rate_at(std::clamp(p.value(), model.price_floor(), model.price_ceil()));
}

double solve_pu(const DemandModel& model) {
  const double lo = model.price_floor();
  const double hi = model.price_ceil();
  const double step = (hi - lo) / kCoarseScan;
  std::vector<double> revenue(kCoarseScan + 1);
  for (int k = 0; k <= kCoarseScan; ++k) revenue[k] = model.revenue_at(lo + step * k);

  const auto best = static_cast<int>(numerics::argmax_first(revenue));
  bool unimodal = true;
  for (int k = 1; k <= best && unimodal; ++k) unimodal = revenue[k] >= revenue[k - 1];
  for (int k = best + 1; k <= kCoarseScan && unimodal; ++k) unimodal = revenue[k] <= revenue[k - 1];

  if (!unimodal) {
    // resolution (hi - lo) / 2^17
    double arg = lo;
    double val = model.revenue_at(lo);
    for (int k = 1; k <= kDenseScan; ++k) {
      const double p = lo + (hi - lo) * k / kDenseScan;
      const double v = model.revenue_at(p);
      if (v > val) {
        val = v;
        arg = p;
      }
    }
    return arg;
  }

  const double a = std::max(lo, lo + step * (best - 1));
  const double b = std::min(hi, lo + step * (best + 1));
  auto f = [&](double p) { return model.revenue_at(p); };
  const double golden = numerics::golden_section_max(f, a, b).argument;

  // The revenue is flat to O(eps) within sqrt(eps) of an interior optimum, so
  // the comparison-based bracket stalls near 1e-8. Finish with bisection on
  // the sign of a central difference, which is resolvable much closer in.
  const double h = 1e-6 * (hi - lo);
  if (golden - a < 4 * h || b - golden < 4 * h) return golden;
  double left = std::max(a + h, golden - 1e3 * h);
  double right = std::min(b - h, golden + 1e3 * h);
  auto slope_sign = [&](double p) { return f(p + h) - f(p - h); };
  if (slope_sign(left) <= 0.0 || slope_sign(right) >= 0.0) return golden;
  for (int it = 0; it < numerics::kMaxIterations && right - left > 1e-13 * (hi - lo); ++it) {
    const double mid = 0.5 * (left + right);
    if (mid <= left || mid >= right) break;
    if (slope_sign(mid) > 0.0) {
      left = mid;
    } else {
      right = mid;
    }
  }
  return 0.5 * (left + right);
}

double solve_pc(const DemandModel& model, double inventory, double horizon) {
  if (!(inventory > 0.0)) throw std::invalid_argument("solve_pc: inventory must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("solve_pc: horizon must be positive");
  const double target = inventory / horizon;
  auto f = [&](double p) { return model.rate_at(p); };
  return numerics::bisect_decreasing(f, target, model.price_floor(), model.price_ceil())
      .argument;
}

double deterministic_price(const DemandModel& model, double inventory, double horizon) {
  return std::max(solve_pu(model), solve_pc(model, inventory, horizon));
}

double deterministic_value(const DemandModel& model, double inventory, double horizon,
                           std::int64_t market_size) {
  if (inventory < 0.0) throw std::invalid_argument("deterministic_value: negative inventory");
  if (!(horizon > 0.0)) throw std::invalid_argument("deterministic_value: horizon must be positive");
  if (inventory == 0.0) return 0.0;
  const double p = deterministic_price(model, inventory, horizon);
  const double sold = std::min(horizon * model.rate_at(p), inventory);
  return static_cast<double>(market_size) * (p * sold);
}

DemandModel advertisement_transform(double fixed_price, const IntensityCurve& curve) {
  return std::visit(
      overloaded{
          [&](const AffineIntensity& c) {
            if (!(c.slope > 0.0))
              throw std::invalid_argument(
                  "advertisement_transform: intensity must increase strictly in the control");
            if (!(c.control_min < c.control_max))
              throw std::invalid_argument("advertisement_transform: empty control range");
            // intercept + slope (p - w) = (intercept + slope p) - slope w
            return DemandModel(LinearDemand{c.intercept + c.slope * fixed_price, c.slope},
                               fixed_price - c.control_max, fixed_price - c.control_min);
          },
          [&](const SampledIntensity& c) {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(c.points.size());
            for (auto it = c.points.rbegin(); it != c.points.rend(); ++it)
              pts.emplace_back(fixed_price - it->first, it->second);
            try {
              return DemandModel::tabulated(std::move(pts), c.constants);
            } catch (const std::invalid_argument& e) {
              throw std::invalid_argument(std::string("advertisement_transform: ") + e.what());
            }
          },
      },
      curve);
}

}  // namespace dynprice
