#include "foodsim/demand.hpp"

#include <cmath>

#include "foodsim/errors.hpp"

namespace foodsim {

std::vector<double> compute_shares(const Basket &basket) {
    const double total = basket.total_expenditure();
    if (total <= 0.0)
        throw ZeroExpenditureError("basket has zero total expenditure");
    std::vector<double> shares(basket.size());
    for (std::size_t i = 0; i < basket.size(); ++i)
        shares[i] = basket.expenditure(i) / total;
    return shares;
}

PeApplication apply_pe_matrix(const Basket &basket, const PEMatrix &pem, const PriceChange &dp) {
    const std::size_t n = basket.size();
    if (pem.size() != n || pem.values.size() != n * n)
        throw DimensionMismatchError("PE matrix dimension does not match basket size");
    for (std::size_t i = 0; i < n; ++i) {
        if (pem.food_ids[i] != basket[i].id)
            throw DimensionMismatchError("PE matrix food ids do not align with basket order (at " +
                                         pem.food_ids[i] + " vs " + basket[i].id + ")");
    }
    if (dp.delta.size() != n)
        throw DimensionMismatchError("price change length does not match basket");
    dp.validate();

    PeApplication result;
    std::vector<FoodItem> items = basket.items();
    for (std::size_t i = 0; i < n; ++i) {
        double relative = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            relative += pem.at(i, j) * dp.delta[j];
        double q = items[i].quantity_g * (1.0 + relative);
        if (!std::isfinite(q))
            throw NonFiniteResultError("non-finite quantity for food " + items[i].id);
        if (q < 0.0) {
            q = 0.0;
            ++result.floored_count;
        }
        items[i].quantity_g = q;
        items[i].price_per_100g *= 1.0 + dp.delta[i];
    }
    result.basket = Basket(std::move(items));
    return result;
}

double fpi_change(const Basket &basket, const PriceChange &dp) {
    if (dp.delta.size() != basket.size())
        throw DimensionMismatchError("price change length does not match basket");
    const std::vector<double> shares = compute_shares(basket);
    double dfpi = 0.0;
    for (std::size_t i = 0; i < shares.size(); ++i)
        dfpi += shares[i] * dp.delta[i];
    return dfpi;
}

double expenditure_change(const Basket &pre, const Basket &post, ExpenditureConvention convention) {
    if (pre.empty() || post.empty())
        throw ZeroExpenditureError("expenditure change needs non-empty baskets");
    if (pre.size() != post.size())
        throw DimensionMismatchError("baskets differ in size");
    const double e_pre = pre.total_expenditure();
    if (e_pre <= 0.0)
        throw ZeroExpenditureError("pre-policy expenditure is zero");

    double e_post = 0.0;
    for (std::size_t i = 0; i < post.size(); ++i) {
        const double price = convention == ExpenditureConvention::baseline_prices
                                 ? pre[i].price_per_100g
                                 : post[i].price_per_100g;
        e_post += post[i].quantity_g * price / 100.0;
    }
    return (e_post - e_pre) / e_pre;
}

double revealed_tfee(double exp_change, double fpi_chg) {
    if (fpi_chg == 0.0)
        throw ZeroFpiChangeError("revealed TFEe is undefined for a zero FPI change");
    return exp_change / fpi_chg;
}

} // namespace foodsim
