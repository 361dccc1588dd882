#pragma once

#include "foodsim/basket.hpp"
#include "foodsim/nutrients.hpp"

namespace foodsim {

/// Daily per-capita intake totals for a basket state.
struct DailyTotals {
    NutrientVector nutrients; // per day
    double grams = 0.0;       // total food weight per day
};

/// total_k = sum_i q_i * composition_ik / 100, plus the grams total.
DailyTotals nutrient_totals(const Basket &basket);

/// Population-average anthropometry for the energy-to-BMI mapping.
/// rho is the steady-state energy flux per kg of eventual weight change.
struct PopulationAnthro {
    double mean_height_m = 1.69;
    double baseline_bmi = 27.5;
    double rho_kj_per_day_per_kg = 100.0;

    double kj_per_day_per_bmi_unit() const {
        return rho_kj_per_day_per_kg * mean_height_m * mean_height_m;
    }

    /// Anthro whose composite coefficient is a fixed kJ/day per BMI unit.
    static PopulationAnthro from_composite(double kj_per_day_per_bmi_unit, double height_m = 1.69);

    void validate() const;
};

/// Steady-state BMI shift for a sustained energy intake change:
/// dBMI = (dEI / rho) / height^2.
double bmi_change(double delta_energy_kj_per_day, const PopulationAnthro &anthro);

} // namespace foodsim
