#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "foodsim/distributions.hpp"

namespace foodsim {

using MetricMap = std::map<std::string, double>;

/// Serial runs the iteration loop on one thread and is the reference
/// implementation; parallel distributes iterations across OpenMP threads.
/// Both produce bit-identical results because each iteration draws from
/// its own seeded substream.
enum class ExecutionPolicy { serial, parallel };

struct McMetricSummary {
    double mean = 0.0;
    double median = 0.0;
    double p2_5 = 0.0;
    double p97_5 = 0.0;
};

struct McSummary {
    std::map<std::string, McMetricSummary> metrics;
    std::size_t iterations = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::size_t> failed_iterations;
    std::vector<MetricMap> iteration_values; // indexed by iteration, empty map on failure
};

/// Empirical percentile with linear interpolation between order statistics.
double percentile(std::vector<double> sorted_values, double p);

/// Runs `run_one` for iterations 0..n-1, each with an independent Rng
/// seeded from (master_seed, k), and aggregates per-metric order-statistic
/// summaries. Per-iteration failures are recorded and tolerated up to 1%
/// of n, beyond which the whole run throws.
McSummary monte_carlo(const std::function<MetricMap(Rng &)> &run_one, std::size_t n,
                      std::uint64_t master_seed,
                      ExecutionPolicy policy = ExecutionPolicy::parallel);

} // namespace foodsim
