#include "foodsim/textbox.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "foodsim/demand.hpp"
#include "foodsim/errors.hpp"
#include "foodsim/nutrition.hpp"

namespace foodsim {

namespace {

// Round half away from zero to `digits` decimals (matches the worked
// example's hand-rounded percentages, e.g. 6.25 -> 6.3).
double round_half_away(double v, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::round(v * scale) / scale;
}

std::string fixed(double v, int digits) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << round_half_away(v, digits);
    return out.str();
}

std::string plain(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

FoodItem make_food(const std::string &id, double quantity_g, double price,
                   double energy_kj_per_100g) {
    FoodItem item;
    item.id = id;
    item.name = id;
    item.group_id = id;
    item.quantity_g = quantity_g;
    item.price_per_100g = price;
    item.composition.energy_kj = energy_kj_per_100g;
    return item;
}

void table_rows(std::ostringstream &out, const std::string &label, const Basket &basket,
                const Basket &price_basket) {
    const DailyTotals totals = nutrient_totals(basket);
    double total_exp = 0.0;
    for (std::size_t i = 0; i < basket.size(); ++i)
        total_exp += basket[i].quantity_g * price_basket[i].price_per_100g / 100.0;

    for (std::size_t i = 0; i < basket.size(); ++i) {
        const auto &item = basket[i];
        const double energy = item.quantity_g * item.composition.energy_kj / 100.0;
        const double exp = item.quantity_g * price_basket[i].price_per_100g / 100.0;
        out << (i == 0 ? label : "") << "\t" << item.name << "\t"
            << plain(item.quantity_g) << " (" << fixed(100.0 * item.quantity_g / totals.grams, 1)
            << "%)\t" << plain(energy) << " (" << fixed(100.0 * energy / totals.nutrients.energy_kj, 1)
            << "%)\t$" << fixed(exp, 2) << " (" << fixed(100.0 * exp / total_exp, 1) << "%)\n";
    }
    out << "\tTotal\t" << plain(totals.grams) << "\t" << plain(totals.nutrients.energy_kj)
        << "\t$" << fixed(total_exp, 2) << "\n";
}

} // namespace

TextboxWorld textbox_setting(int which) {
    std::vector<FoodItem> items;
    if (which == 1) {
        items = {make_food("fruit", 50.0, 0.40, 150.0), make_food("vegetables", 200.0, 0.50, 150.0),
                 make_food("cereals", 200.0, 1.00, 500.0)};
    } else if (which == 2) {
        items = {make_food("fruit", 100.0, 0.40, 150.0),
                 make_food("vegetables", 100.0, 0.50, 150.0),
                 make_food("cereals", 200.0, 1.00, 500.0)};
    } else {
        throw ValidationError("textbox setting must be 1 or 2");
    }

    TextboxWorld world;
    world.baseline = Basket(std::move(items));
    world.pem = PEMatrix::zeros({"fruit", "vegetables", "cereals"});
    world.pem.at(0, 0) = -1.0;  // fruit own-PE
    world.pem.at(1, 0) = 0.30;  // vegetables respond to the fruit price
    world.pem.at(2, 0) = -0.05; // cereals respond to the fruit price
    world.subsidy = PriceChange{{-0.20, 0.0, 0.0}};
    return world;
}

TextboxReport run_textbox(const TextboxWorld &world) {
    TextboxReport report;
    report.post = apply_pe_matrix(world.baseline, world.pem, world.subsidy).basket;

    const DailyTotals pre = nutrient_totals(world.baseline);
    const DailyTotals post = nutrient_totals(report.post);
    report.grams_change = (post.grams - pre.grams) / pre.grams;
    report.energy_change =
        (post.nutrients.energy_kj - pre.nutrients.energy_kj) / pre.nutrients.energy_kj;
    report.expenditure_change = expenditure_change(world.baseline, report.post,
                                                   ExpenditureConvention::baseline_prices);

    std::ostringstream out;
    out << "\t\tg/day\tkJ\tExpenditure\n";
    table_rows(out, "Pre-subsidy", world.baseline, world.baseline);
    table_rows(out, "Post-20% subsidy on fruit", report.post, world.baseline);
    out << "\tDifference pre- to post-subsidy\t" << plain(round_half_away(report.grams_change * 100.0, 2))
        << "%\t" << fixed(report.energy_change * 100.0, 2) << "%\t"
        << fixed(report.expenditure_change * 100.0, 2) << "%\n";
    report.table = out.str();
    return report;
}

std::string textbox_demo() {
    std::ostringstream out;
    const TextboxReport first = run_textbox(textbox_setting(1));
    const TextboxReport second = run_textbox(textbox_setting(2));

    out << "Three-food world: a 20% fruit subsidy applied through the elasticity matrix\n";
    out << "(fruit own-PE -1.0; cross-PEs onto vegetables +0.30 and cereals -0.05).\n\n";
    out << "Setting 1 (where the elasticities were derived)\n";
    out << first.table << "\n";
    out << "Setting 2 (same elasticities and prices, different starting consumption)\n";
    out << second.table << "\n";
    out << "Energy change " << fixed(second.energy_change * 100.0, 2) << "% vs "
        << fixed(first.energy_change * 100.0, 2) << "%: "
        << fixed(second.energy_change / first.energy_change, 1)
        << " times the home-setting shift, and total expenditure is no longer conserved ("
        << fixed(second.expenditure_change * 100.0, 2) << "% vs "
        << fixed(first.expenditure_change * 100.0, 2) << "%).\n";
    return out.str();
}

} // namespace foodsim
