#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "foodsim/basket.hpp"

namespace foodsim {

/// Total food expenditure elasticity: % change in total food spending per
/// 1% change in the food price index. Beta(6,2) describes its uncertainty.
struct Tfee {
    double value = 0.75;
    double alpha = 6.0;
    double beta = 2.0;

    /// Beta(6,2) central estimate (the distribution mean).
    static Tfee preset_default() { return Tfee{}; }
    /// Point estimate from the NZ household expenditure literature.
    static Tfee preset_michelini() { return Tfee{0.832, 6.0, 2.0}; }
};

/// Per-group expenditure elasticities (income-effect response); applied
/// after the PE step, before the final uniform scaling.
struct GroupExpenditureElasticities {
    std::map<std::string, double> eta;
    std::map<std::string, double> sd;

    double at(const std::string &group_id) const;
};

struct RescaleMode {
    enum class Kind { constant_energy, constant_grams, constant_expenditure, tfee_scaled };
    Kind kind = Kind::tfee_scaled;
    double tfee = 0.75; // used by tfee_scaled only

    static RescaleMode constant_energy() { return {Kind::constant_energy, 0.0}; }
    static RescaleMode constant_grams() { return {Kind::constant_grams, 0.0}; }
    static RescaleMode constant_expenditure() { return {Kind::constant_expenditure, 0.0}; }
    static RescaleMode tfee_scaled(double tfee) { return {Kind::tfee_scaled, tfee}; }
};

/// Whether the group-elasticity income shift x is the fractional gap from
/// the post-PE state to the TFEe target (default), or the target's change
/// relative to baseline (tfee * dFPI). Totals are identical after the
/// uniform step; only the cross-food composition differs.
enum class EtaGapConvention { post_pe_gap, target_change };

/// Target total expenditure implied by the TFEe: E0 * (1 + tfee * dfpi).
double tfee_target(double baseline_expenditure, double tfee, double dfpi);

/// q_i *= (1 + eta_g(i) * x), floored at zero. Throws
/// MissingGroupElasticityError when a food's group has no elasticity.
Basket group_elasticity_adjust(const Basket &basket,
                               const GroupExpenditureElasticities &eta, double x,
                               std::size_t *floored_count = nullptr);

/// Scales every quantity by target / current expenditure (at the basket's
/// own prices); the result's expenditure equals the target exactly.
Basket uniform_rescale(const Basket &basket, double target_expenditure);

struct RescaleResult {
    Basket basket;
    std::size_t floored_count = 0;   // quantities clamped at zero
    double residual_rel_error = 0.0; // |achieved - target| / target after the final pass
};

/// Applies one of the four constraint modes to a post-PE basket. The
/// relative composition from the PE step is preserved by the final uniform
/// ratio in every mode. The FPI change is recovered from the two baskets'
/// prices with baseline budget-share weights.
RescaleResult apply_mode(const Basket &post_pe, const RescaleMode &mode, const Basket &baseline,
                         const GroupExpenditureElasticities &eta,
                         EtaGapConvention gap_convention = EtaGapConvention::post_pe_gap);

} // namespace foodsim
