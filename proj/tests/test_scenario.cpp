#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "foodsim/errors.hpp"
#include "foodsim/scenario.hpp"

using namespace foodsim;

namespace {

namespace fs = std::filesystem;

const fs::path scenario_dir = fs::path(FOODSIM_SOURCE_DIR) / "data" / "scenarios";

ScenarioConfig desk_config(const std::string &policy) {
    return ScenarioConfig::from_json_file(scenario_dir / (policy + ".json"));
}

const ScenarioData &desk_data(const std::string &policy) {
    static std::map<std::string, ScenarioData> cache;
    auto it = cache.find(policy);
    if (it == cache.end())
        it = cache.emplace(policy, load_scenario_data(desk_config(policy))).first;
    return it->second;
}

} // namespace

TEST_CASE("config parsing") {
    const ScenarioConfig config = desk_config("fv_subsidy");
    CHECK(config.name == "fv_subsidy");
    CHECK(config.mode.kind == RescaleMode::Kind::tfee_scaled);
    CHECK(config.discount_rates == std::vector<double>{0.0, 0.03});
    CHECK(config.tfee_dist.kind == ParamDistribution::Kind::beta);
    CHECK(config.disagg_dist.mean() == doctest::Approx(0.025));
    CHECK(config.policy.name == "fv_subsidy");
    CHECK_THROWS_AS(ScenarioConfig::from_json_file(scenario_dir / "nope.json"), ParseError);
}

TEST_CASE("TFEe presets are accepted in the rescale block") {
    const fs::path data = fs::path(FOODSIM_SOURCE_DIR) / "data";
    const fs::path path = fs::temp_directory_path() / "preset_config.json";
    std::ofstream out(path);
    out << R"({
      "name": "preset_test",
      "data": {
        "foods": ")" << (data / "foods.csv").string() << R"(",
        "pe_matrix": ")" << (data / "pe_matrix.csv").string() << R"(",
        "group_mapping": ")" << (data / "group_mapping.csv").string() << R"(",
        "expenditure_elasticities": ")" << (data / "expenditure_elasticities.csv").string() << R"(",
        "population": ")" << (data / "population.csv").string() << R"(",
        "diseases": ")" << (data / "diseases.csv").string() << R"(",
        "rr_links": ")" << (data / "rr_links.csv").string() << R"("
      },
      "policy": "sugar_tax",
      "rescale": {"mode": "tfee", "tfee": "michelini"}
    })";
    out.close();

    const ScenarioConfig config = ScenarioConfig::from_json_file(path);
    REQUIRE(config.tfee_override.has_value());
    CHECK(*config.tfee_override == doctest::Approx(0.832));

    const ScenarioData data_loaded = load_scenario_data(config);
    const auto result = simulate_scenario(config, data_loaded,
                                          central_draw(config, data_loaded));
    REQUIRE(result.adjusted.revealed_tfee.has_value());
    CHECK(*result.adjusted.revealed_tfee == doctest::Approx(0.832).epsilon(1e-9));
}

TEST_CASE("scenario validation accepts the desk dataset") {
    const auto report = validate_scenario(desk_config("safa_tax"));
    for (const auto &e : report.errors)
        MESSAGE(e);
    CHECK(report.ok());
}

TEST_CASE("validation reports missing files as errors, not crashes") {
    ScenarioConfig config = desk_config("safa_tax");
    config.elasticities_path = "/no/such/file.csv";
    const auto report = validate_scenario(config);
    CHECK_FALSE(report.ok());
    REQUIRE(!report.errors.empty());
}

TEST_CASE("a group without an expenditure elasticity is a single validation error") {
    const fs::path truncated = fs::temp_directory_path() / "eta_missing_group.csv";
    {
        std::ifstream in(fs::path(FOODSIM_SOURCE_DIR) / "data" /
                         "expenditure_elasticities.csv");
        std::ofstream out(truncated);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("grains,", 0) != 0)
                out << line << "\n";
    }
    ScenarioConfig config = desk_config("safa_tax");
    config.elasticities_path = truncated;
    const auto report = validate_scenario(config);
    CHECK_FALSE(report.ok());
    REQUIRE(report.errors.size() == 1);
    CHECK(report.errors[0].find("grains") != std::string::npos);
}

TEST_CASE("null policy leaves every output unchanged") {
    ScenarioConfig config = desk_config("fv_subsidy");
    config.policy = PolicySpec{"null", {AdValorem{{"fruit"}, 0.0}}};
    const ScenarioData &data = desk_data("fv_subsidy");
    const auto result = simulate_scenario(config, data, central_draw(config, data));

    CHECK(result.conventional.fpi_change == 0.0);
    CHECK(result.conventional.expenditure_change == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(result.conventional.energy_change_kj == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(result.adjusted.grams_change == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(result.adjusted.bmi_change == doctest::Approx(0.0).epsilon(1e-12));
    for (const auto &[rate, delta] : result.adjusted.haly_delta)
        CHECK(delta == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("desk pipeline: TFEe exactness and the Table-1 sign reversal") {
    for (const std::string policy : {"safa_tax", "sugar_tax", "fv_subsidy"}) {
        const ScenarioConfig config = desk_config(policy);
        const ScenarioData &data = desk_data(policy);
        const auto result = simulate_scenario(config, data, central_draw(config, data));
        CAPTURE(policy);

        REQUIRE(result.adjusted.revealed_tfee.has_value());
        CHECK(result.pe_floored == 0);
        CHECK(result.rescale_floored == 0);
        CHECK(*result.adjusted.revealed_tfee == doctest::Approx(0.75).epsilon(1e-9));

        const bool is_tax = policy != "fv_subsidy";
        CHECK(result.adjusted.fpi_change * (is_tax ? 1.0 : -1.0) > 0.0);
        // conventional runs move expenditure against economic expectation
        CHECK((result.conventional.expenditure_change < 0.0) == is_tax);
        // the TFEe adjustment restores the expected direction
        CHECK((result.adjusted.expenditure_change > 0.0) == is_tax);
    }
}

TEST_CASE("rescale modes hit their constraints on the desk dataset") {
    ScenarioConfig config = desk_config("sugar_tax");
    const ScenarioData &data = desk_data("sugar_tax");

    config.mode = RescaleMode::constant_energy();
    auto result = simulate_scenario(config, data, central_draw(config, data));
    CHECK(result.adjusted.energy_change_kj == doctest::Approx(0.0).epsilon(1e-9));

    config.mode = RescaleMode::constant_grams();
    result = simulate_scenario(config, data, central_draw(config, data));
    CHECK(result.adjusted.grams_change == doctest::Approx(0.0).epsilon(1e-9));

    config.mode = RescaleMode::constant_expenditure();
    result = simulate_scenario(config, data, central_draw(config, data));
    CHECK(result.adjusted.expenditure_change == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("central run equals a Fixed-distribution Monte Carlo of n = 1") {
    ScenarioConfig config = desk_config("fv_subsidy");
    const ScenarioData &data = desk_data("fv_subsidy");
    const auto central = result_metrics(simulate_scenario(config, data,
                                                          central_draw(config, data)));

    config.tfee_dist = ParamDistribution::fixed(0.75);
    config.disagg_dist = ParamDistribution::fixed(0.025);
    config.sample_pe_matrix = false;
    config.sample_eta = false;
    const McSummary mc = run_monte_carlo(config, data, 1, 123, ExecutionPolicy::serial);

    for (const auto &[key, value] : central) {
        CAPTURE(key);
        CHECK(mc.metrics.at(key).mean == value);
        CHECK(mc.metrics.at(key).p2_5 == value);
    }
}

TEST_CASE("Monte Carlo on the desk dataset") {
    const ScenarioConfig config = desk_config("fv_subsidy");
    const ScenarioData &data = desk_data("fv_subsidy");

    SUBCASE("serial and parallel agree bit-for-bit") {
        const McSummary serial = run_monte_carlo(config, data, 60, 7, ExecutionPolicy::serial);
        const McSummary parallel = run_monte_carlo(config, data, 60, 7, ExecutionPolicy::parallel);
        REQUIRE(serial.metrics.size() == parallel.metrics.size());
        for (const auto &[key, m] : serial.metrics) {
            CHECK(m.mean == parallel.metrics.at(key).mean);
            CHECK(m.median == parallel.metrics.at(key).median);
            CHECK(m.p2_5 == parallel.metrics.at(key).p2_5);
            CHECK(m.p97_5 == parallel.metrics.at(key).p97_5);
        }
    }
    SUBCASE("percentile ordering and plausible spread") {
        const McSummary mc = run_monte_carlo(config, data, 100, 99, ExecutionPolicy::parallel);
        CHECK(mc.failed_iterations.empty());
        for (const auto &[key, m] : mc.metrics) {
            CAPTURE(key);
            CHECK(m.p2_5 <= m.median);
            CHECK(m.median <= m.p97_5);
        }
        // sampled TFEe spans most of the Beta(6,2) range
        CHECK(mc.metrics.at("params.tfee").p2_5 > 0.2);
        CHECK(mc.metrics.at("params.tfee").p97_5 < 1.0);
    }
}

TEST_CASE("univariate sensitivity on the desk dataset") {
    SUBCASE("pinned values are the distribution quantiles") {
        const ScenarioConfig config = desk_config("safa_tax");
        const ScenarioData &data = desk_data("safa_tax");
        const auto result = univariate_sensitivity(config, data, "tfee");
        CHECK(result.low.pinned_value == doctest::Approx(0.42).epsilon(0.01));
        CHECK(result.high.pinned_value == doctest::Approx(0.96).epsilon(0.01));
        // taxes: a lower TFEe forces a deeper energy cut
        CHECK(result.low.result.adjusted.energy_change_kj <
              result.high.result.adjusted.energy_change_kj);
    }
    SUBCASE("subsidy: a lower TFEe shrinks the health gain") {
        const ScenarioConfig config = desk_config("fv_subsidy");
        const ScenarioData &data = desk_data("fv_subsidy");
        const auto result = univariate_sensitivity(config, data, "tfee");
        const double low_haly = result.low.result.adjusted.haly_delta[0].second;
        const double high_haly = result.high.result.adjusted.haly_delta[0].second;
        CHECK(low_haly < high_haly);
    }
    SUBCASE("disaggregation scalar pins at its normal quantiles") {
        const ScenarioConfig config = desk_config("sugar_tax");
        const ScenarioData &data = desk_data("sugar_tax");
        const auto result = univariate_sensitivity(config, data, "disagg_scalar");
        CHECK(result.low.pinned_value == doctest::Approx(0.0005).epsilon(0.05));
        CHECK(result.high.pinned_value == doctest::Approx(0.0495).epsilon(0.01));
        CHECK(result.low.result.applied_disagg_s < result.high.result.applied_disagg_s);
    }
    SUBCASE("unknown parameter") {
        const ScenarioConfig config = desk_config("safa_tax");
        CHECK_THROWS_AS(univariate_sensitivity(config, desk_data("safa_tax"), "gravity"),
                        UnknownParameterError);
    }
    SUBCASE("a Fixed distribution pins both runs to the same value") {
        ScenarioConfig config = desk_config("safa_tax");
        config.tfee_dist = ParamDistribution::fixed(0.6);
        const auto result = univariate_sensitivity(config, desk_data("safa_tax"), "tfee");
        CHECK(result.low.pinned_value == 0.6);
        CHECK(result.high.pinned_value == 0.6);
        CHECK(result.low.result.adjusted.energy_change_kj ==
              result.high.result.adjusted.energy_change_kj);
    }
}

TEST_CASE("baseline-price compatibility convention flows through the pipeline") {
    ScenarioConfig config = desk_config("fv_subsidy");
    config.convention = ExpenditureConvention::baseline_prices;
    const ScenarioData &data = desk_data("fv_subsidy");
    const auto result = simulate_scenario(config, data, central_draw(config, data));
    const auto post_prices = simulate_scenario(desk_config("fv_subsidy"), data,
                                               central_draw(config, data));
    // valuing post-subsidy quantities at baseline prices must differ from
    // valuing them at subsidised prices
    CHECK(result.conventional.expenditure_change !=
          doctest::Approx(post_prices.conventional.expenditure_change).epsilon(1e-6));
}
