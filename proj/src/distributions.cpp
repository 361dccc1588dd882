#include "foodsim/distributions.hpp"

#include <cmath>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

#include "foodsim/errors.hpp"

namespace foodsim {

ParamDistribution ParamDistribution::beta(double alpha, double beta_param) {
    if (!(alpha > 0.0) || !(beta_param > 0.0))
        throw ValidationError("beta distribution requires alpha, beta > 0");
    return {Kind::beta, alpha, beta_param};
}

ParamDistribution ParamDistribution::normal(double mu, double sigma) {
    if (!(sigma >= 0.0))
        throw ValidationError("normal distribution requires sigma >= 0");
    return {Kind::normal, mu, sigma};
}

ParamDistribution ParamDistribution::normal_nonneg(double mu, double sigma) {
    if (!(sigma >= 0.0))
        throw ValidationError("normal distribution requires sigma >= 0");
    return {Kind::normal_nonneg, mu, sigma};
}

ParamDistribution ParamDistribution::fixed(double value) { return {Kind::fixed, value, 0.0}; }

double ParamDistribution::mean() const {
    switch (kind) {
    case Kind::beta: return a / (a + b);
    case Kind::normal:
    case Kind::normal_nonneg: return a;
    case Kind::fixed: return a;
    }
    throw ValidationError("unknown distribution kind");
}

double ParamDistribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("quantile probability must be in (0,1)");
    switch (kind) {
    case Kind::beta:
        return boost::math::quantile(boost::math::beta_distribution<double>(a, b), p);
    case Kind::normal:
        if (b == 0.0)
            return a;
        return boost::math::quantile(boost::math::normal_distribution<double>(a, b), p);
    case Kind::normal_nonneg: {
        if (b == 0.0)
            return std::max(a, 0.0);
        const double q = boost::math::quantile(boost::math::normal_distribution<double>(a, b), p);
        return std::max(q, 0.0);
    }
    case Kind::fixed:
        return a;
    }
    throw ValidationError("unknown distribution kind");
}

double sample(const ParamDistribution &dist, Rng &rng) {
    switch (dist.kind) {
    case ParamDistribution::Kind::beta: {
        std::gamma_distribution<double> ga(dist.a, 1.0);
        std::gamma_distribution<double> gb(dist.b, 1.0);
        const double x = ga(rng);
        const double y = gb(rng);
        return x / (x + y);
    }
    case ParamDistribution::Kind::normal: {
        if (dist.b == 0.0)
            return dist.a;
        std::normal_distribution<double> n(dist.a, dist.b);
        return n(rng);
    }
    case ParamDistribution::Kind::normal_nonneg: {
        if (dist.b == 0.0)
            return std::max(dist.a, 0.0);
        std::normal_distribution<double> n(dist.a, dist.b);
        double v = n(rng);
        while (v < 0.0)
            v = n(rng);
        return v;
    }
    case ParamDistribution::Kind::fixed:
        return dist.a;
    }
    throw ValidationError("unknown distribution kind");
}

std::uint64_t iteration_seed(std::uint64_t master_seed, std::uint64_t iteration) {
    // splitmix64 finalizer over the (seed, iteration) pair
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (iteration + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace foodsim
