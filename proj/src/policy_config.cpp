#include "dynprice/policy_config.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dynprice/baselines.hpp"

namespace dynprice {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Dpa: return "dpa";
    case PolicyKind::Dpa2: return "dpa2";
    case PolicyKind::Clairvoyant: return "clairvoyant";
    case PolicyKind::SinglePhase: return "single_phase";
    case PolicyKind::Fixed: return "fixed";
    case PolicyKind::Synthetic: return "synthetic";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(const std::string& text) {
  for (auto k : {PolicyKind::Dpa, PolicyKind::Dpa2, PolicyKind::Clairvoyant, PolicyKind::SinglePhase,
                 PolicyKind::Fixed, PolicyKind::Synthetic}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown policy '" + text +
                              "' (expected dpa|dpa2|clairvoyant|single_phase|fixed|synthetic)");
}

void PolicyConfig::validate() const {
  switch (kind) {
    case PolicyKind::Dpa:
    case PolicyKind::Dpa2:
      if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("policy.delta: must lie in (0, 1/2)");
      break;
    case PolicyKind::SinglePhase:
      if (learn_fraction && !(*learn_fraction > 0.0 && *learn_fraction < 1.0))
        throw std::invalid_argument("policy.learn_fraction: must lie in (0, 1)");
      if (grid_size && *grid_size < 2)
        throw std::invalid_argument("policy.grid_size: must be at least 2");
      break;
    case PolicyKind::Fixed:
      if (std::isnan(fixed_price)) throw std::invalid_argument("policy.fixed_price: not a number");
      break;
    case PolicyKind::Synthetic:
      if (!(synthetic_constant > 0.0))
        throw std::invalid_argument("policy.synthetic_constant: must be positive");
      break;
    case PolicyKind::Clairvoyant:
      break;
  }
}

std::string PolicyConfig::label() const {
  if (kind == PolicyKind::Fixed) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "fixed(%.17g)", fixed_price);
    return buf;
  }
  return to_string(kind);
}

std::unique_ptr<PricingPolicy> make_policy(const PolicyConfig& config,
                                           const ProblemInstance& instance) {
  config.validate();
  const SellerView view = SellerView::of(instance);
  switch (config.kind) {
    case PolicyKind::Dpa:
      return std::make_unique<DpaPolicy>(
          view, DpaOptions{config.delta, config.log_mode, config.step3_interval});
    case PolicyKind::Dpa2:
      return std::make_unique<Dpa2Policy>(view, config.delta, config.log_mode);
    case PolicyKind::Clairvoyant:
      return clairvoyant_policy(instance);
    case PolicyKind::SinglePhase:
      return std::make_unique<SinglePhaseGridPolicy>(
          view,
          config.learn_fraction.value_or(
              SinglePhaseGridPolicy::default_learn_fraction(instance.market_size)),
          config.grid_size.value_or(SinglePhaseGridPolicy::default_grid_size(instance.market_size)));
    case PolicyKind::Fixed: {
      const Price p = std::isinf(config.fixed_price) ? Price::cutoff() : Price(config.fixed_price);
      return std::make_unique<FixedPricePolicy>(p, instance.horizon, config.label());
    }
    case PolicyKind::Synthetic:
      throw std::invalid_argument("the synthetic policy has no simulator implementation");
  }
  throw std::logic_error("make_policy: unhandled policy kind");
}

}  // namespace dynprice
