#include "foodsim/policy.hpp"

#include <cmath>

#include "foodsim/errors.hpp"
#include "foodsim/nutrients.hpp"

namespace foodsim {

namespace {

void apply_excise(const NutrientExcise &excise, const Basket &basket, std::vector<double> &delta) {
    if (!std::isfinite(excise.rate_per_100g))
        throw ValidationError("excise rate must be finite");
    const std::size_t nutrient = nutrient_index(excise.nutrient);
    for (std::size_t i = 0; i < basket.size(); ++i) {
        const double per_100g = basket[i].composition[nutrient];
        // tax per 100 g of food = rate * nutrient share; full pass-through
        delta[i] += excise.rate_per_100g * per_100g / (100.0 * basket[i].price_per_100g);
    }
}

void apply_ad_valorem(const AdValorem &av, const Basket &basket, std::vector<double> &delta) {
    if (!(av.fraction > -1.0) || !std::isfinite(av.fraction))
        throw ValidationError("ad-valorem fraction must be finite and > -1");
    std::size_t matched = 0;
    for (std::size_t i = 0; i < basket.size(); ++i) {
        for (const auto &key : av.selector) {
            if (basket[i].id == key || basket[i].group_id == key) {
                delta[i] += av.fraction;
                ++matched;
                break;
            }
        }
    }
    if (matched == 0)
        throw EmptySelectorError("ad-valorem selector matched no foods");
}

} // namespace

PriceChange price_change(const PolicySpec &policy, const Basket &basket) {
    std::vector<double> delta(basket.size(), 0.0);
    for (const auto &component : policy.components) {
        std::visit([&](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, NutrientExcise>)
                apply_excise(c, basket, delta);
            else
                apply_ad_valorem(c, basket, delta);
        }, component);
    }
    for (std::size_t i = 0; i < delta.size(); ++i) {
        if (delta[i] <= -1.0)
            throw PriceWouldBeNonpositiveError("combined price change for " + basket[i].id +
                                               " is <= -100%");
    }
    return PriceChange{std::move(delta)};
}

std::vector<PolicySpec> builtin_scenarios() {
    PolicySpec safa{"safa_tax", {NutrientExcise{"satfat", 2.0}}};
    PolicySpec sugar{"sugar_tax", {NutrientExcise{"sugar", 0.4}}};
    PolicySpec fv{"fv_subsidy", {AdValorem{{"fruit", "vegetables"}, -0.20}}};
    return {safa, sugar, fv};
}

} // namespace foodsim
