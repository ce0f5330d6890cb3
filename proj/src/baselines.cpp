#include "dynprice/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynprice/numerics.hpp"

namespace dynprice {

FixedPricePolicy::FixedPricePolicy(Price price, double horizon, std::string name)
    : price_(price), horizon_(horizon), name_(std::move(name)) {
  if (!(horizon > 0.0)) throw std::invalid_argument("FixedPricePolicy: horizon must be positive");
}

std::optional<SegmentRequest> FixedPricePolicy::next_segment(std::optional<std::int64_t>) {
  if (issued_) return std::nullopt;
  issued_ = true;
  return SegmentRequest{price_, horizon_};
}

std::unique_ptr<FixedPricePolicy> clairvoyant_policy(const ProblemInstance& instance) {
  instance.validate();
  const double p = deterministic_price(instance.demand, instance.inventory, instance.horizon);
  return std::make_unique<FixedPricePolicy>(Price(p), instance.horizon, "clairvoyant");
}

SinglePhaseGridPolicy::SinglePhaseGridPolicy(const SellerView& view, double learn_fraction,
                                             int grid_size)
    : view_(view) {
  if (!(learn_fraction > 0.0 && learn_fraction < 1.0))
    throw std::invalid_argument("SinglePhaseGridPolicy: learn_fraction must lie in (0, 1)");
  if (grid_size < 2) throw std::invalid_argument("SinglePhaseGridPolicy: grid_size must be >= 2");
  grid_.resize(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j)
    grid_[j] = view.price_floor + (view.price_ceil - view.price_floor) * j / (grid_size - 1);
  segment_ = learn_fraction * view.horizon / grid_size;
  sales_.reserve(grid_.size());
}

double SinglePhaseGridPolicy::default_learn_fraction(std::int64_t n) {
  return std::min(0.99, std::pow(static_cast<double>(n), -0.25));
}

int SinglePhaseGridPolicy::default_grid_size(std::int64_t n) {
  return std::max(2, static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 0.25) - 1e-12)));
}

std::optional<SegmentRequest> SinglePhaseGridPolicy::next_segment(
    std::optional<std::int64_t> last_sales) {
  if (last_sales && sales_.size() < issued_) sales_.push_back(*last_sales);

  if (issued_ < grid_.size()) {
    elapsed_ += segment_;
    return SegmentRequest{Price(grid_[issued_++]), segment_};
  }
  if (done_) return std::nullopt;

  const double exposure = static_cast<double>(view_.market_size) * segment_;
  std::vector<double> revenue(grid_.size());
  std::vector<double> gap(grid_.size());
  for (std::size_t j = 0; j < grid_.size(); ++j) {
    const double d_hat = static_cast<double>(sales_[j]) / exposure;
    revenue[j] = grid_[j] * d_hat;
    gap[j] = std::abs(d_hat - view_.target_rate());
  }
  applied_ = std::max(grid_[numerics::argmax_first(revenue)], grid_[numerics::argmin_first(gap)]);
  done_ = true;
  return SegmentRequest{Price(*applied_), std::max(0.0, view_.horizon - elapsed_)};
}

}  // namespace dynprice
