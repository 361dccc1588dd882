#include "foodsim/basket.hpp"

#include <cmath>
#include <unordered_set>

#include "foodsim/errors.hpp"

namespace foodsim {

Basket::Basket(std::vector<FoodItem> items) : items_(std::move(items)) {
    std::unordered_set<std::string> seen;
    for (const auto &item : items_) {
        if (item.id.empty())
            throw ValidationError("food item with empty id");
        if (!seen.insert(item.id).second)
            throw ValidationError("duplicate food id: " + item.id);
        if (!(item.quantity_g >= 0.0) || !std::isfinite(item.quantity_g))
            throw ValidationError("food " + item.id + ": quantity must be >= 0");
        if (!(item.price_per_100g > 0.0) || !std::isfinite(item.price_per_100g))
            throw ValidationError("food " + item.id + ": price must be > 0");
        if (!item.composition.all_nonnegative())
            throw ValidationError("food " + item.id + ": negative nutrient composition");
    }
}

double Basket::expenditure(std::size_t i) const {
    const auto &item = items_[i];
    return item.quantity_g * item.price_per_100g / 100.0;
}

double Basket::total_expenditure() const {
    double total = 0.0;
    for (std::size_t i = 0; i < items_.size(); ++i)
        total += expenditure(i);
    return total;
}

double Basket::total_grams() const {
    double total = 0.0;
    for (const auto &item : items_)
        total += item.quantity_g;
    return total;
}

std::optional<std::size_t> Basket::index_of(const std::string &id) const {
    for (std::size_t i = 0; i < items_.size(); ++i)
        if (items_[i].id == id)
            return i;
    return std::nullopt;
}

void PriceChange::validate() const {
    for (double d : delta) {
        if (!std::isfinite(d))
            throw ValidationError("non-finite price change");
        if (d <= -1.0)
            throw PriceWouldBeNonpositiveError("price change <= -100% would make a price nonpositive");
    }
}

Basket with_prices_changed(const Basket &basket, const PriceChange &dp) {
    if (dp.delta.size() != basket.size())
        throw DimensionMismatchError("price change length does not match basket");
    dp.validate();
    std::vector<FoodItem> items = basket.items();
    for (std::size_t i = 0; i < items.size(); ++i)
        items[i].price_per_100g *= 1.0 + dp.delta[i];
    return Basket(std::move(items));
}

} // namespace foodsim
