#include "foodsim/nutrition.hpp"

#include <cmath>

#include "foodsim/errors.hpp"

namespace foodsim {

DailyTotals nutrient_totals(const Basket &basket) {
    DailyTotals totals;
    for (const auto &item : basket.items()) {
        totals.nutrients += item.composition.scaled(item.quantity_g / 100.0);
        totals.grams += item.quantity_g;
    }
    return totals;
}

PopulationAnthro PopulationAnthro::from_composite(double kj_per_day_per_bmi_unit, double height_m) {
    PopulationAnthro anthro;
    anthro.mean_height_m = height_m;
    anthro.rho_kj_per_day_per_kg = kj_per_day_per_bmi_unit / (height_m * height_m);
    return anthro;
}

void PopulationAnthro::validate() const {
    if (!(mean_height_m > 1.0 && mean_height_m < 2.2))
        throw ValidationError("mean height must be in (1.0, 2.2) m");
    if (!(rho_kj_per_day_per_kg > 0.0) || !std::isfinite(rho_kj_per_day_per_kg))
        throw ValidationError("rho must be > 0");
    if (!(baseline_bmi >= 0.0))
        throw ValidationError("baseline BMI must be >= 0");
}

double bmi_change(double delta_energy_kj_per_day, const PopulationAnthro &anthro) {
    anthro.validate();
    return delta_energy_kj_per_day / anthro.kj_per_day_per_bmi_unit();
}

} // namespace foodsim
