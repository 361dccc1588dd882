#pragma once

#include <cstddef>
#include <vector>

#include "foodsim/basket.hpp"
#include "foodsim/pe_matrix.hpp"

namespace foodsim {

/// Which prices value the post-policy quantities when computing the
/// expenditure change. Post-policy prices are the economically meaningful
/// default; baseline prices reproduce conditional-PE worked examples that
/// value new quantities at old prices.
enum class ExpenditureConvention { post_policy_prices, baseline_prices };

/// Budget share of each food (expenditure_i / total expenditure).
/// Throws ZeroExpenditureError when the basket total is zero.
std::vector<double> compute_shares(const Basket &basket);

struct PeApplication {
    Basket basket;               // new quantities, prices moved to p*(1+delta)
    std::size_t floored_count = 0; // quantities clamped at zero
};

/// First-order Marshallian update q_i' = q_i * (1 + sum_j e_ij * delta_j),
/// floored at zero. Matrix ids must match the basket's item ids in order.
PeApplication apply_pe_matrix(const Basket &basket, const PEMatrix &pem, const PriceChange &dp);

/// Fractional change in the food price index: baseline-budget-share-weighted
/// mean of the fractional price changes (Laspeyres-style weighting).
double fpi_change(const Basket &basket, const PriceChange &dp);

/// (E_post - E_pre) / E_pre. Under baseline_prices the post quantities are
/// valued at the pre basket's prices (items matched by position).
double expenditure_change(const Basket &pre, const Basket &post,
                          ExpenditureConvention convention = ExpenditureConvention::post_policy_prices);

/// Expenditure change divided by FPI change: the total food expenditure
/// elasticity a model run implies. Throws ZeroFpiChangeError.
double revealed_tfee(double exp_change, double fpi_chg);

} // namespace foodsim
