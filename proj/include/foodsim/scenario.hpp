#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foodsim/basket.hpp"
#include "foodsim/demand.hpp"
#include "foodsim/disaggregate.hpp"
#include "foodsim/distributions.hpp"
#include "foodsim/lifetable.hpp"
#include "foodsim/monte_carlo.hpp"
#include "foodsim/nutrition.hpp"
#include "foodsim/pe_matrix.hpp"
#include "foodsim/policy.hpp"
#include "foodsim/rescale.hpp"

namespace foodsim {

/// Everything a scenario run needs: data file paths, the policy, the
/// rescaling mode and the uncertainty setup. Loaded from a JSON file;
/// relative paths resolve against the config file's directory (or the
/// FOODSIM_DATA_DIR environment variable when set).
struct ScenarioConfig {
    std::string name;

    std::filesystem::path foods_path;
    std::filesystem::path pe_matrix_path;
    std::filesystem::path pe_matrix_sd_path; // optional
    std::filesystem::path mapping_path;      // optional; identity when absent
    std::filesystem::path elasticities_path;
    std::filesystem::path population_path;
    std::filesystem::path diseases_path;
    std::filesystem::path rr_links_path;

    PolicySpec policy;
    RescaleMode mode = RescaleMode::tfee_scaled(0.75);
    EtaGapConvention eta_gap = EtaGapConvention::post_pe_gap;
    ExpenditureConvention convention = ExpenditureConvention::post_policy_prices;

    ParamDistribution tfee_dist = ParamDistribution::beta(6.0, 2.0);
    std::optional<double> tfee_override; // pins the central TFEe (e.g. CLI --tfee)
    ParamDistribution disagg_dist = ParamDistribution::normal_nonneg(0.025, 0.0125);
    std::optional<double> disagg_override;
    bool sample_pe_matrix = true;
    bool sample_eta = true;

    PopulationAnthro anthro;
    std::vector<double> discount_rates = {0.0, 0.03};

    static ScenarioConfig from_json_file(const std::filesystem::path &path);
};

/// Parsed and cross-checked data tables, with the basket reordered to the
/// disaggregation mapping's child order (the canonical food order for the
/// whole pipeline).
struct ScenarioData {
    Basket baseline;
    PEMatrix parent_pem;
    GroupMapping mapping;
    GroupExpenditureElasticities eta;
    CohortTable cohorts;
    std::vector<DiseaseProcess> diseases;
    LifetableContext lifetable; // dense tables + BAU paths, shared across draws
};

ScenarioData load_scenario_data(const ScenarioConfig &config);

/// One concrete realization of the uncertain inputs.
struct ParameterDraw {
    double tfee = 0.75;
    double disagg_s = 0.025;
    PEMatrix parent_pem;
    GroupExpenditureElasticities eta;
};

/// Expected values for every parameter.
ParameterDraw central_draw(const ScenarioConfig &config, const ScenarioData &data);

/// Random draw: TFEe, disaggregation scalar, then the PE matrix entries
/// (row-major, own-PE clamped at zero) and the group elasticities, in that
/// fixed order.
ParameterDraw sampled_draw(const ScenarioConfig &config, const ScenarioData &data, Rng &rng);

/// Changes versus business-as-usual for one model variant (conventional
/// or rescaled).
struct ScenarioOutcome {
    double fpi_change = 0.0;          // fraction
    double expenditure_change = 0.0;  // fraction, per the configured convention
    double grams_change = 0.0;        // g/day
    double energy_change_kj = 0.0;    // kJ/day
    double bmi_change = 0.0;
    double fruit_change_g = 0.0;
    double veg_change_g = 0.0;
    double salt_change_g = 0.0;
    double pufa_change_g = 0.0;
    double ssb_change_ml = 0.0;
    std::vector<std::pair<double, double>> haly_delta; // (discount rate, delta HALY)
    std::optional<double> revealed_tfee;
};

/// Business-as-usual absolute levels (the reference row).
struct BauSummary {
    double expenditure = 0.0;
    double grams = 0.0;
    double energy_kj = 0.0;
    double bmi = 0.0;
    double fruit_g = 0.0;
    double veg_g = 0.0;
    double salt_g = 0.0;
    double pufa_g = 0.0;
    double ssb_ml = 0.0;
    std::vector<std::pair<double, double>> haly; // (discount rate, BAU HALYs)
};

struct ScenarioResult {
    BauSummary bau;
    ScenarioOutcome conventional; // raw PE application, no rescaling
    ScenarioOutcome adjusted;     // after the configured rescale mode
    double applied_tfee = 0.0;
    double applied_disagg_s = 0.0;
    std::size_t pe_floored = 0;
    std::size_t rescale_floored = 0;
    double rescale_residual = 0.0;
};

/// Full pipeline for one draw: policy -> PE -> group-elasticity adjustment
/// -> rescale -> nutrient totals -> BMI -> PIFs -> lifetable.
ScenarioResult simulate_scenario(const ScenarioConfig &config, const ScenarioData &data,
                                 const ParameterDraw &draw);

/// Loads the data and runs the central (expected-value) scenario.
ScenarioResult run_scenario(const ScenarioConfig &config);

/// Flattened metrics for Monte Carlo aggregation and JSON output.
MetricMap result_metrics(const ScenarioResult &result);

McSummary run_monte_carlo(const ScenarioConfig &config, const ScenarioData &data, std::size_t n,
                          std::uint64_t master_seed,
                          ExecutionPolicy policy = ExecutionPolicy::parallel);

struct SensitivityRun {
    double pinned_value = 0.0;
    ScenarioResult result;
};

/// Two deterministic runs with one parameter ("tfee" or "disagg_scalar")
/// pinned at its distribution's low/high quantiles, everything else at
/// central values.
struct SensitivityResult {
    std::string param;
    SensitivityRun low;
    SensitivityRun high;
    ScenarioResult central;
};

SensitivityResult univariate_sensitivity(const ScenarioConfig &config, const ScenarioData &data,
                                         const std::string &param, double low_percentile = 2.5,
                                         double high_percentile = 97.5);

struct ConfigValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

/// Aggregates every module's validators over the config and its data files.
ConfigValidationReport validate_scenario(const ScenarioConfig &config);

/// Label for a discount rate used in metric keys: 0.03 -> "3".
std::string discount_label(double rate);

/// Canonical JSON rendering of a Monte Carlo summary
/// ({metric -> {mean, median, p2_5, p97_5}} plus run metadata); keys are
/// sorted and doubles use shortest-round-trip formatting, so equal
/// summaries serialize to identical bytes.
std::string mc_summary_json(const McSummary &summary, const std::string &scenario_name);

} // namespace foodsim
