#include <doctest.h>

#include <stdexcept>

#include "foodsim/errors.hpp"
#include "foodsim/monte_carlo.hpp"

using namespace foodsim;

namespace {

MetricMap beta_metrics(Rng &rng) {
    const auto dist = ParamDistribution::beta(6.0, 2.0);
    MetricMap m;
    m["tfee"] = sample(dist, rng);
    m["twice"] = 2.0 * m["tfee"];
    return m;
}

} // namespace

TEST_CASE("percentile interpolation") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(percentile(v, 0.0) == 1.0);
    CHECK(percentile(v, 100.0) == 5.0);
    CHECK(percentile(v, 50.0) == 3.0);
    CHECK(percentile(v, 25.0) == 2.0);
    CHECK(percentile(v, 62.5) == doctest::Approx(3.5));
    CHECK_THROWS_AS(percentile({}, 50.0), ValidationError);
}

TEST_CASE("all-fixed distributions collapse the summary to the point estimate") {
    const auto run_one = [](Rng &) {
        MetricMap m;
        m["value"] = 1.25;
        return m;
    };
    const McSummary summary = monte_carlo(run_one, 64, 9, ExecutionPolicy::serial);
    const auto &metric = summary.metrics.at("value");
    CHECK(metric.mean == 1.25);
    CHECK(metric.median == 1.25);
    CHECK(metric.p2_5 == 1.25);
    CHECK(metric.p97_5 == 1.25);
}

TEST_CASE("same seed gives identical summaries; different seeds differ") {
    const McSummary a = monte_carlo(beta_metrics, 500, 1234, ExecutionPolicy::serial);
    const McSummary b = monte_carlo(beta_metrics, 500, 1234, ExecutionPolicy::serial);
    const McSummary c = monte_carlo(beta_metrics, 500, 999, ExecutionPolicy::serial);
    CHECK(a.metrics.at("tfee").mean == b.metrics.at("tfee").mean);
    CHECK(a.metrics.at("tfee").p2_5 == b.metrics.at("tfee").p2_5);
    CHECK(a.metrics.at("tfee").mean != c.metrics.at("tfee").mean);
}

TEST_CASE("serial and parallel execution produce bit-identical results") {
    const McSummary serial = monte_carlo(beta_metrics, 400, 31337, ExecutionPolicy::serial);
    const McSummary parallel = monte_carlo(beta_metrics, 400, 31337, ExecutionPolicy::parallel);
    REQUIRE(serial.iteration_values.size() == parallel.iteration_values.size());
    for (std::size_t k = 0; k < serial.iteration_values.size(); ++k)
        CHECK(serial.iteration_values[k].at("tfee") == parallel.iteration_values[k].at("tfee"));
    CHECK(serial.metrics.at("tfee").mean == parallel.metrics.at("tfee").mean);
    CHECK(serial.metrics.at("twice").p97_5 == parallel.metrics.at("twice").p97_5);
}

TEST_CASE("percentile ordering holds for every metric") {
    const McSummary summary = monte_carlo(beta_metrics, 2000, 7, ExecutionPolicy::parallel);
    for (const auto &[name, m] : summary.metrics) {
        CHECK(m.p2_5 <= m.median);
        CHECK(m.median <= m.p97_5);
    }
}

TEST_CASE("failure tolerance") {
    SUBCASE("failing more than 1% of iterations aborts the run") {
        const auto always_bad = [](Rng &) -> MetricMap {
            throw std::runtime_error("bad draw");
        };
        CHECK_THROWS_AS(monte_carlo(always_bad, 100, 5, ExecutionPolicy::serial), Error);
    }
    SUBCASE("a sparse failure pattern is tolerated, recorded and reproducible") {
        const auto mostly_good = [](Rng &rng) -> MetricMap {
            const double v = sample(ParamDistribution::beta(6.0, 2.0), rng);
            // draws below 0.2 have probability ~0.2% under Beta(6,2)
            if (v < 0.2)
                throw std::runtime_error("pathological draw");
            return {{"v", v}};
        };
        const McSummary summary = monte_carlo(mostly_good, 1000, 99, ExecutionPolicy::serial);
        CHECK(summary.failed_iterations.size() * 100 <= 1000);
        const McSummary again = monte_carlo(mostly_good, 1000, 99, ExecutionPolicy::parallel);
        CHECK(summary.failed_iterations == again.failed_iterations);
        CHECK(summary.metrics.at("v").mean == again.metrics.at("v").mean);
    }
}
