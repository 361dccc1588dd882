#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace foodsim {

/// Nutrient bundle. In a FoodItem the values are per 100 g of food; in
/// daily totals they are per capita per day.
struct NutrientVector {
    double energy_kj = 0.0;
    double satfat_g = 0.0;
    double sugar_g = 0.0;
    double salt_g = 0.0;
    double pufa_g = 0.0;
    double fruit_g = 0.0;
    double veg_g = 0.0;
    double ssb_ml = 0.0;

    static constexpr std::size_t component_count = 8;

    double &operator[](std::size_t i);
    double operator[](std::size_t i) const;

    NutrientVector &operator+=(const NutrientVector &other);
    NutrientVector scaled(double factor) const;

    bool all_nonnegative() const;
};

NutrientVector operator+(NutrientVector a, const NutrientVector &b);
NutrientVector operator-(const NutrientVector &a, const NutrientVector &b);

/// Canonical component keys, in storage order ("energy", "satfat", ...).
const std::array<std::string, NutrientVector::component_count> &nutrient_keys();

/// Index of `key` in the component order; throws UnknownNutrientError.
std::size_t nutrient_index(const std::string &key);

} // namespace foodsim
