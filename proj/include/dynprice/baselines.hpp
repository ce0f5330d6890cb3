#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynprice/demand.hpp"
#include "dynprice/dpa.hpp"
#include "dynprice/policy.hpp"

namespace dynprice {

/// One segment at a fixed price for the whole season.
class FixedPricePolicy final : public PricingPolicy {
 public:
  FixedPricePolicy(Price price, double horizon, std::string name = "fixed");

  std::optional<SegmentRequest> next_segment(std::optional<std::int64_t> last_sales) override;
  std::string name() const override { return name_; }
  Price price() const { return price_; }

 private:
  Price price_;
  double horizon_;
  std::string name_;
  bool issued_ = false;
};

/// Fixed price at p^D of the true demand curve.
std::unique_ptr<FixedPricePolicy> clairvoyant_policy(const ProblemInstance& instance);

/// Learn-then-earn baseline: tests an evenly spaced grid (endpoints included)
/// during [0, learn_fraction T], then applies max(p_hat_u, p_hat_c).
class SinglePhaseGridPolicy final : public PricingPolicy {
 public:
  SinglePhaseGridPolicy(const SellerView& view, double learn_fraction, int grid_size);

  /// learn_fraction = n^{-1/4}, grid_size = ceil(n^{1/4}) (at least 2).
  static double default_learn_fraction(std::int64_t n);
  static int default_grid_size(std::int64_t n);

  std::optional<SegmentRequest> next_segment(std::optional<std::int64_t> last_sales) override;
  std::string name() const override { return "single_phase"; }

  const std::vector<double>& grid() const { return grid_; }
  std::optional<double> applied_price() const { return applied_; }

 private:
  SellerView view_;
  std::vector<double> grid_;
  double segment_;
  std::vector<std::int64_t> sales_;
  std::size_t issued_ = 0;
  double elapsed_ = 0.0;
  std::optional<double> applied_;
  bool done_ = false;
};

}  // namespace dynprice
