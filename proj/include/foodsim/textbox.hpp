#pragma once

#include <string>

#include "foodsim/basket.hpp"
#include "foodsim/pe_matrix.hpp"

namespace foodsim {

/// The three-food demonstration world: fruit, vegetables and cereal with a
/// 20% fruit subsidy. Setting 1 is the home setting the elasticities were
/// derived for; setting 2 transplants them to a different consumption
/// pattern and shows the distortion in totals.
struct TextboxWorld {
    Basket baseline;
    PEMatrix pem;
    PriceChange subsidy; // -20% on fruit
};

TextboxWorld textbox_setting(int which); // 1 or 2

struct TextboxReport {
    Basket post;           // after the PE application
    double grams_change;   // fraction
    double energy_change;  // fraction
    double expenditure_change; // fraction, at baseline prices
    std::string table;     // formatted pre/post table
};

TextboxReport run_textbox(const TextboxWorld &world);

/// Both settings' tables plus the distortion summary, ready to print.
std::string textbox_demo();

} // namespace foodsim
