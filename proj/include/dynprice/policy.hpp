#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dynprice/demand.hpp"

namespace dynprice {

/// One piecewise-constant pricing instruction.
struct SegmentRequest {
  Price price;
  double duration = 0.0;
};

/// Segment-request contract between a pricing policy and the simulator.
///
/// The simulator calls next_segment() repeatedly. The first call passes
/// nullopt; every later call passes the (inventory-capped) sales observed in
/// the segment returned by the previous call. Returning nullopt ends the
/// policy; the simulator prices the rest of the season at the cutoff.
/// Once stock is exhausted the simulator stops calling the policy.
class PricingPolicy {
 public:
  virtual ~PricingPolicy() = default;

  virtual std::optional<SegmentRequest> next_segment(std::optional<std::int64_t> last_sales) = 0;

  virtual std::string name() const = 0;
};

}  // namespace dynprice
