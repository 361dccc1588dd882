#include "foodsim/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "foodsim/errors.hpp"

namespace foodsim {

double percentile(std::vector<double> sorted_values, double p) {
    if (sorted_values.empty())
        throw ValidationError("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 100.0))
        throw ValidationError("percentile must be in [0, 100]");
    const double rank = p / 100.0 * static_cast<double>(sorted_values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(rank));
    const double frac = rank - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

McSummary monte_carlo(const std::function<MetricMap(Rng &)> &run_one, std::size_t n,
                      std::uint64_t master_seed, ExecutionPolicy policy) {
    if (n < 1)
        throw ValidationError("at least one iteration is required");

    McSummary summary;
    summary.iterations = n;
    summary.master_seed = master_seed;
    summary.iteration_values.assign(n, MetricMap{});
    std::vector<char> failed(n, 0);

    const auto run_iteration = [&](std::size_t k) {
        Rng rng(iteration_seed(master_seed, k));
        try {
            summary.iteration_values[k] = run_one(rng);
        } catch (const std::exception &) {
            failed[k] = 1;
        }
    };

    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long k = 0; k < static_cast<long long>(n); ++k)
            run_iteration(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < n; ++k)
            run_iteration(k);
    }

    for (std::size_t k = 0; k < n; ++k)
        if (failed[k])
            summary.failed_iterations.push_back(k);
    if (summary.failed_iterations.size() * 100 > n)
        throw Error("more than 1% of Monte Carlo iterations failed (" +
                    std::to_string(summary.failed_iterations.size()) + " of " +
                    std::to_string(n) + ")");

    // Collect metric keys from successful iterations (ordered set for
    // deterministic output).
    std::set<std::string> keys;
    for (std::size_t k = 0; k < n; ++k)
        if (!failed[k])
            for (const auto &[key, value] : summary.iteration_values[k])
                keys.insert(key);

    for (const auto &key : keys) {
        std::vector<double> values;
        values.reserve(n);
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (failed[k])
                continue;
            const auto it = summary.iteration_values[k].find(key);
            if (it == summary.iteration_values[k].end())
                continue;
            values.push_back(it->second);
            sum += it->second;
        }
        if (values.empty())
            continue;
        std::sort(values.begin(), values.end());
        McMetricSummary m;
        m.mean = sum / static_cast<double>(values.size());
        m.median = percentile(values, 50.0);
        m.p2_5 = percentile(values, 2.5);
        m.p97_5 = percentile(values, 97.5);
        summary.metrics[key] = m;
    }
    return summary;
}

} // namespace foodsim
