#include "foodsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "foodsim/dataset.hpp"
#include "foodsim/errors.hpp"

namespace foodsim {

namespace {

using nlohmann::json;

// Relative data paths resolve against the config file's directory; when a
// file is not there and FOODSIM_DATA_DIR is set, that directory is tried
// as the fallback.
std::filesystem::path resolve_path(const std::string &raw, const std::filesystem::path &base) {
    std::filesystem::path p(raw);
    if (p.is_absolute())
        return p;
    const std::filesystem::path beside_config = base / p;
    if (std::filesystem::exists(beside_config))
        return beside_config;
    if (const char *env = std::getenv("FOODSIM_DATA_DIR"); env && *env) {
        const std::filesystem::path in_data_dir = std::filesystem::path(env) / p;
        if (std::filesystem::exists(in_data_dir))
            return in_data_dir;
    }
    return beside_config;
}

PolicySpec parse_policy(const json &j) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        for (auto &builtin : builtin_scenarios())
            if (builtin.name == name)
                return builtin;
        throw ValidationError("unknown builtin policy: " + name);
    }
    PolicySpec policy;
    policy.name = j.value("name", "custom");
    if (!j.contains("components") || !j["components"].is_array())
        throw ValidationError("policy needs a components array");
    for (const auto &c : j["components"]) {
        const std::string kind = c.at("kind").get<std::string>();
        if (kind == "nutrient_excise") {
            policy.components.push_back(
                NutrientExcise{c.at("nutrient").get<std::string>(), c.at("rate").get<double>()});
        } else if (kind == "ad_valorem") {
            AdValorem av;
            av.fraction = c.at("fraction").get<double>();
            for (const auto &s : c.at("selector"))
                av.selector.push_back(s.get<std::string>());
            policy.components.push_back(std::move(av));
        } else {
            throw ValidationError("unknown policy component kind: " + kind);
        }
    }
    return policy;
}

ParamDistribution parse_distribution(const json &j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "beta")
        return ParamDistribution::beta(j.at("alpha").get<double>(), j.at("beta").get<double>());
    if (kind == "normal")
        return ParamDistribution::normal(j.at("mu").get<double>(), j.at("sigma").get<double>());
    if (kind == "normal_nonneg")
        return ParamDistribution::normal_nonneg(j.at("mu").get<double>(),
                                                j.at("sigma").get<double>());
    if (kind == "fixed")
        return ParamDistribution::fixed(j.at("value").get<double>());
    throw ValidationError("unknown distribution kind: " + kind);
}

// Child ids in the order the expanded matrix will use: parent-matrix order,
// then mapping order within each group.
std::vector<std::string> canonical_child_order(const PEMatrix &parent, const GroupMapping &mapping) {
    std::vector<std::string> order;
    for (const auto &pid : parent.food_ids) {
        const auto *group = mapping.find(pid);
        if (!group)
            throw MappingGapError("no mapping for parent group " + pid);
        order.insert(order.end(), group->child_ids.begin(), group->child_ids.end());
    }
    return order;
}

Basket reorder_basket(const Basket &basket, const std::vector<std::string> &order) {
    if (order.size() != basket.size())
        throw MappingGapError("mapping covers " + std::to_string(order.size()) +
                              " foods but the basket has " + std::to_string(basket.size()));
    std::vector<FoodItem> items;
    items.reserve(order.size());
    for (const auto &id : order) {
        const auto idx = basket.index_of(id);
        if (!idx)
            throw MappingGapError("mapped food " + id + " is not in the basket");
        items.push_back(basket[*idx]);
    }
    return Basket(std::move(items));
}

} // namespace

std::string discount_label(double rate) {
    std::ostringstream out;
    out << rate * 100.0;
    return out.str();
}

ScenarioConfig ScenarioConfig::from_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw ParseError("config " + path.string() + ": " + e.what());
    }

    const std::filesystem::path base = path.parent_path();
    ScenarioConfig config;
    config.name = j.value("name", path.stem().string());

    const auto &data = j.at("data");
    const auto get_path = [&](const char *key, bool required) -> std::filesystem::path {
        if (!data.contains(key)) {
            if (required)
                throw ValidationError("config " + path.string() + ": data." + key +
                                      " is required");
            return {};
        }
        return resolve_path(data.at(key).get<std::string>(), base);
    };
    config.foods_path = get_path("foods", true);
    config.pe_matrix_path = get_path("pe_matrix", true);
    config.pe_matrix_sd_path = get_path("pe_matrix_sd", false);
    config.mapping_path = get_path("group_mapping", false);
    config.elasticities_path = get_path("expenditure_elasticities", true);
    config.population_path = get_path("population", true);
    config.diseases_path = get_path("diseases", true);
    config.rr_links_path = get_path("rr_links", true);

    config.policy = parse_policy(j.at("policy"));

    if (j.contains("rescale")) {
        const auto &r = j["rescale"];
        const std::string mode = r.value("mode", "tfee");
        if (mode == "energy")
            config.mode = RescaleMode::constant_energy();
        else if (mode == "grams")
            config.mode = RescaleMode::constant_grams();
        else if (mode == "expenditure")
            config.mode = RescaleMode::constant_expenditure();
        else if (mode == "tfee")
            config.mode = RescaleMode::tfee_scaled(0.75);
        else
            throw ValidationError("unknown rescale mode: " + mode);
        if (r.contains("tfee")) {
            if (r["tfee"].is_string()) {
                const std::string preset = r["tfee"].get<std::string>();
                if (preset == "beta_mean")
                    config.tfee_override = Tfee::preset_default().value;
                else if (preset == "michelini")
                    config.tfee_override = Tfee::preset_michelini().value;
                else
                    throw ValidationError("unknown TFEe preset: " + preset +
                                          " (expected beta_mean or michelini)");
            } else {
                config.tfee_override = r["tfee"].get<double>();
            }
        }
        const std::string gap = r.value("eta_gap", "post_pe_gap");
        if (gap == "post_pe_gap")
            config.eta_gap = EtaGapConvention::post_pe_gap;
        else if (gap == "target_change")
            config.eta_gap = EtaGapConvention::target_change;
        else
            throw ValidationError("unknown eta_gap convention: " + gap);
    }

    if (j.contains("tfee_distribution"))
        config.tfee_dist = parse_distribution(j["tfee_distribution"]);
    if (j.contains("disaggregation")) {
        const auto &d = j["disaggregation"];
        const double scalar = d.value("scalar", 0.025);
        const double sd = d.value("sd", 0.0125);
        config.disagg_dist = ParamDistribution::normal_nonneg(scalar, sd);
    }

    if (j.contains("anthro")) {
        const auto &a = j["anthro"];
        config.anthro.mean_height_m = a.value("mean_height_m", config.anthro.mean_height_m);
        config.anthro.baseline_bmi = a.value("baseline_bmi", config.anthro.baseline_bmi);
        if (a.contains("kj_per_day_per_bmi_unit"))
            config.anthro = PopulationAnthro::from_composite(
                a["kj_per_day_per_bmi_unit"].get<double>(), config.anthro.mean_height_m);
        else
            config.anthro.rho_kj_per_day_per_kg =
                a.value("rho_kj_per_day_per_kg", config.anthro.rho_kj_per_day_per_kg);
        if (a.contains("baseline_bmi"))
            config.anthro.baseline_bmi = a["baseline_bmi"].get<double>();
    }

    if (j.contains("discount_rates")) {
        config.discount_rates.clear();
        for (const auto &r : j["discount_rates"])
            config.discount_rates.push_back(r.get<double>());
    }

    if (j.contains("expenditure_convention")) {
        const std::string c = j["expenditure_convention"].get<std::string>();
        if (c == "post_policy_prices")
            config.convention = ExpenditureConvention::post_policy_prices;
        else if (c == "baseline_prices")
            config.convention = ExpenditureConvention::baseline_prices;
        else
            throw ValidationError("unknown expenditure convention: " + c);
    }

    if (j.contains("monte_carlo")) {
        const auto &m = j["monte_carlo"];
        config.sample_pe_matrix = m.value("sample_pe_matrix", true);
        config.sample_eta = m.value("sample_eta", true);
    }
    return config;
}

ScenarioData load_scenario_data(const ScenarioConfig &config) {
    ScenarioData data;
    Basket foods = load_foods(config.foods_path);
    data.parent_pem = load_pe_matrix(config.pe_matrix_path, config.pe_matrix_sd_path);

    const PeValidationReport report = validate_pe_matrix(data.parent_pem);
    if (!report.ok())
        throw ValidationError("PE matrix failed validation:\n" + report.to_string());

    if (config.mapping_path.empty())
        data.mapping = GroupMapping::identity(data.parent_pem.food_ids);
    else
        data.mapping = load_group_mapping(config.mapping_path);

    data.baseline = reorder_basket(foods, canonical_child_order(data.parent_pem, data.mapping));
    data.mapping.resolve_shares(data.baseline);
    data.mapping.validate();

    data.eta = load_expenditure_elasticities(config.elasticities_path);
    for (const auto &item : data.baseline.items())
        data.eta.at(item.group_id); // throws MissingGroupElasticityError

    data.cohorts = load_population(config.population_path);
    data.diseases = load_diseases(config.diseases_path, config.rr_links_path);
    data.lifetable = LifetableContext::build(data.cohorts, data.diseases);
    return data;
}

ParameterDraw central_draw(const ScenarioConfig &config, const ScenarioData &data) {
    ParameterDraw draw;
    draw.tfee = config.tfee_override ? *config.tfee_override : config.tfee_dist.mean();
    draw.disagg_s = config.disagg_override ? *config.disagg_override : config.disagg_dist.mean();
    draw.parent_pem = data.parent_pem;
    draw.eta = data.eta;
    return draw;
}

ParameterDraw sampled_draw(const ScenarioConfig &config, const ScenarioData &data, Rng &rng) {
    ParameterDraw draw;
    draw.tfee = sample(config.tfee_dist, rng);
    draw.disagg_s = std::max(sample(config.disagg_dist, rng), 0.0);
    draw.parent_pem = data.parent_pem;
    if (config.sample_pe_matrix && data.parent_pem.has_sd()) {
        const std::size_t n = draw.parent_pem.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double sd = data.parent_pem.sd_at(i, j);
                if (sd <= 0.0)
                    continue;
                std::normal_distribution<double> dist(data.parent_pem.at(i, j), sd);
                double e = dist(rng);
                if (i == j)
                    e = std::min(e, 0.0); // own-PE draws clamp at zero
                draw.parent_pem.at(i, j) = e;
            }
        }
    }
    draw.eta = data.eta;
    if (config.sample_eta) {
        for (auto &[group, value] : draw.eta.eta) {
            const auto it = draw.eta.sd.find(group);
            if (it == draw.eta.sd.end() || it->second <= 0.0)
                continue;
            std::normal_distribution<double> dist(value, it->second);
            value = dist(rng);
        }
    }
    return draw;
}

namespace {

std::map<std::string, double> exposure_deltas(const DailyTotals &baseline,
                                              const DailyTotals &current, double bmi_delta) {
    const NutrientVector diff = current.nutrients - baseline.nutrients;
    return {
        {"bmi", bmi_delta},
        {"energy", diff.energy_kj},
        {"grams", current.grams - baseline.grams},
        {"satfat", diff.satfat_g},
        {"sugar", diff.sugar_g},
        {"salt", diff.salt_g},
        {"pufa", diff.pufa_g},
        {"fruit", diff.fruit_g},
        {"veg", diff.veg_g},
        {"ssb", diff.ssb_ml},
    };
}

ScenarioOutcome make_outcome(const ScenarioConfig &config, const ScenarioData &data,
                             const Basket &baseline, const DailyTotals &totals0,
                             const Basket &final_basket, double dfpi) {
    ScenarioOutcome o;
    o.fpi_change = dfpi;
    o.expenditure_change = expenditure_change(baseline, final_basket, config.convention);

    const DailyTotals totals1 = nutrient_totals(final_basket);
    const NutrientVector diff = totals1.nutrients - totals0.nutrients;
    o.grams_change = totals1.grams - totals0.grams;
    o.energy_change_kj = diff.energy_kj;
    o.bmi_change = bmi_change(diff.energy_kj, config.anthro);
    o.fruit_change_g = diff.fruit_g;
    o.veg_change_g = diff.veg_g;
    o.salt_change_g = diff.salt_g;
    o.pufa_change_g = diff.pufa_g;
    o.ssb_change_ml = diff.ssb_ml;
    if (dfpi != 0.0)
        o.revealed_tfee = revealed_tfee(o.expenditure_change, dfpi);

    const auto exposures = exposure_deltas(totals0, totals1, o.bmi_change);
    const auto pifs = build_pif_paths(data.diseases, exposures, data.cohorts.horizon_years());
    const auto results = run_lifetable(data.lifetable, pifs, config.discount_rates);
    for (std::size_t r = 0; r < config.discount_rates.size(); ++r)
        o.haly_delta.emplace_back(config.discount_rates[r], results[r].delta_haly);
    return o;
}

} // namespace

ScenarioResult simulate_scenario(const ScenarioConfig &config, const ScenarioData &data,
                                 const ParameterDraw &draw) {
    const Basket &baseline = data.baseline;
    const PriceChange dp = price_change(config.policy, baseline);
    const double dfpi = fpi_change(baseline, dp);

    const PEMatrix child_pem = expand_matrix(draw.parent_pem, data.mapping, draw.disagg_s);
    const PeApplication pe_app = apply_pe_matrix(baseline, child_pem, dp);

    RescaleMode mode = config.mode;
    if (mode.kind == RescaleMode::Kind::tfee_scaled)
        mode.tfee = draw.tfee;
    const RescaleResult rescaled = apply_mode(pe_app.basket, mode, baseline, draw.eta,
                                              config.eta_gap);

    ScenarioResult result;
    result.applied_tfee = draw.tfee;
    result.applied_disagg_s = draw.disagg_s;
    result.pe_floored = pe_app.floored_count;
    result.rescale_floored = rescaled.floored_count;
    result.rescale_residual = rescaled.residual_rel_error;

    const DailyTotals totals0 = nutrient_totals(baseline);
    result.bau.expenditure = baseline.total_expenditure();
    result.bau.grams = totals0.grams;
    result.bau.energy_kj = totals0.nutrients.energy_kj;
    result.bau.bmi = config.anthro.baseline_bmi;
    result.bau.fruit_g = totals0.nutrients.fruit_g;
    result.bau.veg_g = totals0.nutrients.veg_g;
    result.bau.salt_g = totals0.nutrients.salt_g;
    result.bau.pufa_g = totals0.nutrients.pufa_g;
    result.bau.ssb_ml = totals0.nutrients.ssb_ml;
    const std::vector<std::vector<double>> no_pifs(data.diseases.size());
    const auto bau_results = run_lifetable(data.lifetable, no_pifs, config.discount_rates);
    for (std::size_t r = 0; r < config.discount_rates.size(); ++r)
        result.bau.haly.emplace_back(config.discount_rates[r], bau_results[r].haly_bau);

    result.conventional = make_outcome(config, data, baseline, totals0, pe_app.basket, dfpi);
    result.adjusted = make_outcome(config, data, baseline, totals0, rescaled.basket, dfpi);
    return result;
}

ScenarioResult run_scenario(const ScenarioConfig &config) {
    const ScenarioData data = load_scenario_data(config);
    return simulate_scenario(config, data, central_draw(config, data));
}

namespace {

void outcome_metrics(const ScenarioOutcome &o, const std::string &prefix, MetricMap &out) {
    out[prefix + ".expenditure_change_pct"] = o.expenditure_change * 100.0;
    out[prefix + ".grams_change_g"] = o.grams_change;
    out[prefix + ".energy_change_kj"] = o.energy_change_kj;
    out[prefix + ".bmi_change"] = o.bmi_change;
    out[prefix + ".fruit_change_g"] = o.fruit_change_g;
    out[prefix + ".veg_change_g"] = o.veg_change_g;
    out[prefix + ".salt_change_g"] = o.salt_change_g;
    out[prefix + ".pufa_change_g"] = o.pufa_change_g;
    out[prefix + ".ssb_change_ml"] = o.ssb_change_ml;
    for (const auto &[rate, delta] : o.haly_delta)
        out[prefix + ".haly_d" + discount_label(rate)] = delta;
    if (o.revealed_tfee)
        out[prefix + ".revealed_tfee"] = *o.revealed_tfee;
}

} // namespace

MetricMap result_metrics(const ScenarioResult &result) {
    MetricMap out;
    out["fpi_change_pct"] = result.adjusted.fpi_change * 100.0;
    out["params.tfee"] = result.applied_tfee;
    out["params.disagg_scalar"] = result.applied_disagg_s;
    outcome_metrics(result.conventional, "conventional", out);
    outcome_metrics(result.adjusted, "adjusted", out);
    return out;
}

McSummary run_monte_carlo(const ScenarioConfig &config, const ScenarioData &data, std::size_t n,
                          std::uint64_t master_seed, ExecutionPolicy policy) {
    const auto run_one = [&config, &data](Rng &rng) {
        const ParameterDraw draw = sampled_draw(config, data, rng);
        return result_metrics(simulate_scenario(config, data, draw));
    };
    return monte_carlo(run_one, n, master_seed, policy);
}

SensitivityResult univariate_sensitivity(const ScenarioConfig &config, const ScenarioData &data,
                                         const std::string &param, double low_percentile,
                                         double high_percentile) {
    const ParamDistribution *dist = nullptr;
    if (param == "tfee")
        dist = &config.tfee_dist;
    else if (param == "disagg_scalar")
        dist = &config.disagg_dist;
    else
        throw UnknownParameterError("unknown sensitivity parameter: " + param +
                                    " (expected tfee or disagg_scalar)");

    const auto pin = [&](double percentile_value) {
        ParameterDraw draw = central_draw(config, data);
        const double value = dist->quantile(percentile_value / 100.0);
        if (param == "tfee")
            draw.tfee = value;
        else
            draw.disagg_s = value;
        return SensitivityRun{value, simulate_scenario(config, data, draw)};
    };

    SensitivityResult result;
    result.param = param;
    result.central = simulate_scenario(config, data, central_draw(config, data));
    result.low = pin(low_percentile);
    result.high = pin(high_percentile);
    return result;
}

std::string mc_summary_json(const McSummary &summary, const std::string &scenario_name) {
    json metrics;
    for (const auto &[key, m] : summary.metrics)
        metrics[key] = {{"mean", m.mean},
                        {"median", m.median},
                        {"p2_5", m.p2_5},
                        {"p97_5", m.p97_5}};
    json j;
    j["scenario"] = scenario_name;
    j["iterations"] = summary.iterations;
    j["seed"] = summary.master_seed;
    j["failed_iterations"] = summary.failed_iterations.size();
    j["metrics"] = metrics;
    return j.dump(2) + "\n";
}

ConfigValidationReport validate_scenario(const ScenarioConfig &config) {
    ConfigValidationReport report;
    const auto check = [&report](const std::string &what, const auto &fn) {
        try {
            fn();
        } catch (const std::exception &e) {
            report.errors.push_back(what + ": " + e.what());
        }
    };

    ScenarioData data;
    bool loaded = false;
    check("data", [&] {
        data = load_scenario_data(config);
        loaded = true;
    });
    check("anthro", [&] { config.anthro.validate(); });
    for (double rate : config.discount_rates)
        if (rate < 0.0)
            report.errors.push_back("discount rate must be >= 0");

    if (!loaded)
        return report;

    for (const auto &issue : validate_pe_matrix(data.parent_pem).issues) {
        if (issue.severity == PeValidationIssue::Severity::warning)
            report.warnings.push_back("pe_matrix: " + issue.message);
        else
            report.errors.push_back("pe_matrix: " + issue.message);
    }

    for (const auto &[group, eta] : data.eta.eta)
        if (eta < 0.0)
            report.warnings.push_back("expenditure elasticity for " + group +
                                      " is negative: " + std::to_string(eta));

    static const std::set<std::string> known_factors = {"bmi",  "energy", "grams", "satfat",
                                                        "sugar", "salt",  "pufa",  "fruit",
                                                        "veg",  "ssb"};
    for (const auto &disease : data.diseases)
        for (const auto &link : disease.links)
            if (!known_factors.count(link.risk_factor))
                report.errors.push_back("disease " + disease.id + " links unknown risk factor " +
                                        link.risk_factor);

    check("policy", [&] { price_change(config.policy, data.baseline); });
    check("pipeline", [&] { simulate_scenario(config, data, central_draw(config, data)); });
    return report;
}

} // namespace foodsim
