#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foodsim/nutrients.hpp"

namespace foodsim {

struct FoodItem {
    std::string id;
    std::string name;
    std::string group_id;
    double quantity_g = 0.0;     // grams/day per capita
    double price_per_100g = 0.0; // currency per 100 g
    NutrientVector composition;  // per 100 g of food
};

/// Ordered collection of foods. Quantities may be zero; prices must be
/// positive and compositions non-negative (checked on construction).
class Basket {
  public:
    Basket() = default;
    explicit Basket(std::vector<FoodItem> items);

    const std::vector<FoodItem> &items() const { return items_; }
    std::vector<FoodItem> &items() { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    const FoodItem &operator[](std::size_t i) const { return items_[i]; }
    FoodItem &operator[](std::size_t i) { return items_[i]; }

    /// quantity_i * price_i / 100
    double expenditure(std::size_t i) const;
    double total_expenditure() const;
    double total_grams() const;

    std::optional<std::size_t> index_of(const std::string &id) const;

  private:
    std::vector<FoodItem> items_;
};

/// Fractional price change per food (delta_i = dp_i / p_i), aligned with a
/// basket's item order. Every entry must be > -1.
struct PriceChange {
    std::vector<double> delta;

    static PriceChange zeros(std::size_t n) { return PriceChange{std::vector<double>(n, 0.0)}; }
    void validate() const;
};

/// Basket with each item's price scaled by (1 + delta_i).
Basket with_prices_changed(const Basket &basket, const PriceChange &dp);

} // namespace foodsim
