#pragma once

#include <string>
#include <variant>
#include <vector>

#include "foodsim/basket.hpp"

namespace foodsim {

/// Excise of `rate_per_100g` currency per 100 g of a nutrient, applied to
/// every food in proportion to its nutrient content and passed through
/// fully to the consumer price.
struct NutrientExcise {
    std::string nutrient; // key into NutrientVector ("satfat", "sugar", ...)
    double rate_per_100g = 0.0;
};

/// Proportional price change on the selected foods; negative = subsidy.
/// Selector entries match food ids or group ids.
struct AdValorem {
    std::vector<std::string> selector;
    double fraction = 0.0;
};

using PolicyComponent = std::variant<NutrientExcise, AdValorem>;

struct PolicySpec {
    std::string name;
    std::vector<PolicyComponent> components;
};

/// Per-food fractional price change for a policy. Components combine
/// additively on the fractional scale; the result must leave every price
/// positive.
PriceChange price_change(const PolicySpec &policy, const Basket &basket);

/// The three demonstration policies: a $2/100g saturated-fat excise, a
/// $0.4/100g sugar excise, and a 20% fruit & vegetable subsidy.
std::vector<PolicySpec> builtin_scenarios();

} // namespace foodsim
