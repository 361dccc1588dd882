#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace foodsim {

using Rng = std::mt19937_64;

/// Uncertainty distribution for one input parameter.
struct ParamDistribution {
    enum class Kind { beta, normal, normal_nonneg, fixed };

    Kind kind = Kind::fixed;
    double a = 0.0; // alpha / mu / fixed value
    double b = 0.0; // beta / sigma

    static ParamDistribution beta(double alpha, double beta_param);
    static ParamDistribution normal(double mu, double sigma);
    static ParamDistribution normal_nonneg(double mu, double sigma);
    static ParamDistribution fixed(double value);

    /// Central (expected) value used for deterministic runs.
    double mean() const;

    /// Distribution quantile; normal_nonneg clamps at zero.
    double quantile(double p) const;
};

/// One random draw. normal_nonneg redraws until non-negative.
double sample(const ParamDistribution &dist, Rng &rng);

/// Seed for iteration k's independent substream, derived from the master
/// seed by a splitmix64 mix; serial and parallel execution see identical
/// streams.
std::uint64_t iteration_seed(std::uint64_t master_seed, std::uint64_t iteration);

} // namespace foodsim
