#include "foodsim/rescale.hpp"

#include <cmath>

#include "foodsim/demand.hpp"
#include "foodsim/errors.hpp"

namespace foodsim {

double GroupExpenditureElasticities::at(const std::string &group_id) const {
    const auto it = eta.find(group_id);
    if (it == eta.end())
        throw MissingGroupElasticityError("no expenditure elasticity for group " + group_id);
    return it->second;
}

double tfee_target(double baseline_expenditure, double tfee, double dfpi) {
    if (baseline_expenditure <= 0.0)
        throw ZeroBaselineTotalError("baseline expenditure must be > 0");
    return baseline_expenditure * (1.0 + tfee * dfpi);
}

Basket group_elasticity_adjust(const Basket &basket, const GroupExpenditureElasticities &eta,
                               double x, std::size_t *floored_count) {
    std::vector<FoodItem> items = basket.items();
    std::size_t floored = 0;
    for (auto &item : items) {
        double q = item.quantity_g * (1.0 + eta.at(item.group_id) * x);
        if (q < 0.0) {
            q = 0.0;
            ++floored;
        }
        item.quantity_g = q;
    }
    if (floored_count)
        *floored_count = floored;
    return Basket(std::move(items));
}

Basket uniform_rescale(const Basket &basket, double target_expenditure) {
    const double current = basket.total_expenditure();
    if (current <= 0.0)
        throw ZeroExpenditureError("cannot rescale a basket with zero expenditure");
    const double ratio = target_expenditure / current;
    std::vector<FoodItem> items = basket.items();
    for (auto &item : items)
        item.quantity_g *= ratio;
    return Basket(std::move(items));
}

namespace {

double total_energy_kj(const Basket &basket) {
    double total = 0.0;
    for (const auto &item : basket.items())
        total += item.quantity_g * item.composition.energy_kj / 100.0;
    return total;
}

Basket scale_quantities(const Basket &basket, double ratio) {
    std::vector<FoodItem> items = basket.items();
    for (auto &item : items)
        item.quantity_g *= ratio;
    return Basket(std::move(items));
}

double recover_dfpi(const Basket &post_pe, const Basket &baseline) {
    if (post_pe.size() != baseline.size())
        throw DimensionMismatchError("post-PE basket size differs from baseline");
    PriceChange dp;
    dp.delta.resize(baseline.size());
    for (std::size_t i = 0; i < baseline.size(); ++i)
        dp.delta[i] = post_pe[i].price_per_100g / baseline[i].price_per_100g - 1.0;
    return fpi_change(baseline, dp);
}

} // namespace

RescaleResult apply_mode(const Basket &post_pe, const RescaleMode &mode, const Basket &baseline,
                         const GroupExpenditureElasticities &eta,
                         EtaGapConvention gap_convention) {
    RescaleResult result;

    switch (mode.kind) {
    case RescaleMode::Kind::constant_energy: {
        const double base = total_energy_kj(baseline);
        if (base <= 0.0)
            throw ZeroBaselineTotalError("baseline energy total must be > 0");
        const double current = total_energy_kj(post_pe);
        if (current <= 0.0)
            throw ZeroBaselineTotalError("post-PE energy total is zero; cannot hold energy constant");
        result.basket = scale_quantities(post_pe, base / current);
        result.residual_rel_error = std::fabs(total_energy_kj(result.basket) - base) / base;
        return result;
    }
    case RescaleMode::Kind::constant_grams: {
        const double base = baseline.total_grams();
        if (base <= 0.0)
            throw ZeroBaselineTotalError("baseline grams total must be > 0");
        const double current = post_pe.total_grams();
        if (current <= 0.0)
            throw ZeroBaselineTotalError("post-PE grams total is zero; cannot hold grams constant");
        result.basket = scale_quantities(post_pe, base / current);
        result.residual_rel_error = std::fabs(result.basket.total_grams() - base) / base;
        return result;
    }
    case RescaleMode::Kind::constant_expenditure:
        return apply_mode(post_pe, RescaleMode::tfee_scaled(0.0), baseline, eta, gap_convention);
    case RescaleMode::Kind::tfee_scaled:
        break;
    }

    const double e0 = baseline.total_expenditure();
    if (e0 <= 0.0)
        throw ZeroBaselineTotalError("baseline expenditure must be > 0");
    const double dfpi = recover_dfpi(post_pe, baseline);
    const double target = tfee_target(e0, mode.tfee, dfpi);

    const double e_post_pe = post_pe.total_expenditure();
    if (e_post_pe <= 0.0)
        throw ZeroExpenditureError("post-PE expenditure is zero; cannot rescale");
    const double x = gap_convention == EtaGapConvention::post_pe_gap
                         ? (target - e_post_pe) / e_post_pe
                         : mode.tfee * dfpi;

    Basket adjusted = group_elasticity_adjust(post_pe, eta, x, &result.floored_count);
    Basket final_basket = uniform_rescale(adjusted, target);

    // Flooring upstream can leave the uniform step slightly off target; one
    // further pass removes any residual.
    double residual = std::fabs(final_basket.total_expenditure() - target) / target;
    if (residual > 1e-12) {
        final_basket = uniform_rescale(final_basket, target);
        residual = std::fabs(final_basket.total_expenditure() - target) / target;
    }
    result.basket = std::move(final_basket);
    result.residual_rel_error = residual;
    return result;
}

} // namespace foodsim
