#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "foodsim/csv.hpp"
#include "foodsim/dataset.hpp"
#include "foodsim/errors.hpp"
#include "foodsim/scenario.hpp"
#include "foodsim/textbox.hpp"

namespace {

using foodsim::ScenarioConfig;
using foodsim::ScenarioOutcome;
using foodsim::ScenarioResult;
using json = nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_runtime = 2;

std::string pct(double fraction) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << fraction * 100.0 << "%";
    return out.str();
}

std::string num(double v, int digits = 2) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
}

json outcome_json(const ScenarioOutcome &o) {
    json j;
    j["fpi_change_pct"] = o.fpi_change * 100.0;
    j["expenditure_change_pct"] = o.expenditure_change * 100.0;
    j["grams_change_g"] = o.grams_change;
    j["energy_change_kj"] = o.energy_change_kj;
    j["bmi_change"] = o.bmi_change;
    j["fruit_change_g"] = o.fruit_change_g;
    j["veg_change_g"] = o.veg_change_g;
    j["salt_change_g"] = o.salt_change_g;
    j["pufa_change_g"] = o.pufa_change_g;
    j["ssb_change_ml"] = o.ssb_change_ml;
    for (const auto &[rate, delta] : o.haly_delta)
        j["haly_d" + foodsim::discount_label(rate)] = delta;
    if (o.revealed_tfee)
        j["revealed_tfee"] = *o.revealed_tfee;
    return j;
}

json result_json(const ScenarioResult &result, const std::string &name) {
    json j;
    j["scenario"] = name;
    j["bau"] = {{"expenditure", result.bau.expenditure},
                {"grams", result.bau.grams},
                {"energy_kj", result.bau.energy_kj},
                {"bmi", result.bau.bmi},
                {"fruit_g", result.bau.fruit_g},
                {"veg_g", result.bau.veg_g},
                {"salt_g", result.bau.salt_g},
                {"pufa_g", result.bau.pufa_g},
                {"ssb_ml", result.bau.ssb_ml}};
    for (const auto &[rate, haly] : result.bau.haly)
        j["bau"]["haly_d" + foodsim::discount_label(rate)] = haly;
    j["conventional"] = outcome_json(result.conventional);
    j["adjusted"] = outcome_json(result.adjusted);
    j["params"] = {{"tfee", result.applied_tfee}, {"disagg_scalar", result.applied_disagg_s}};
    j["diagnostics"] = {{"pe_floored", result.pe_floored},
                        {"rescale_floored", result.rescale_floored},
                        {"rescale_residual", result.rescale_residual}};
    return j;
}

void print_result_table(const ScenarioResult &result, const std::string &name) {
    const auto row = [](const std::string &label, const ScenarioOutcome &o) {
        std::ostringstream out;
        out << std::left << std::setw(28) << label << std::right << std::setw(10)
            << pct(o.expenditure_change) << std::setw(10) << num(o.grams_change, 1)
            << std::setw(10) << num(o.energy_change_kj, 0) << std::setw(8) << num(o.bmi_change)
            << std::setw(9) << num(o.fruit_change_g, 1) << std::setw(9) << num(o.veg_change_g, 1)
            << std::setw(8) << num(o.salt_change_g) << std::setw(8) << num(o.pufa_change_g, 3)
            << std::setw(9) << num(o.ssb_change_ml, 1);
        for (const auto &[rate, delta] : o.haly_delta)
            out << std::setw(14) << num(delta, 0);
        return out.str();
    };

    std::cout << "Scenario: " << name << "  (FPI change "
              << pct(result.adjusted.fpi_change) << ")\n\n";
    std::cout << std::left << std::setw(28) << "" << std::right << std::setw(10) << "Expend"
              << std::setw(10) << "g/day" << std::setw(10) << "kJ" << std::setw(8) << "BMI"
              << std::setw(9) << "Fruit" << std::setw(9) << "Veg" << std::setw(8) << "Salt"
              << std::setw(8) << "PUFA" << std::setw(9) << "SSB";
    for (const auto &[rate, delta] : result.adjusted.haly_delta)
        std::cout << std::setw(14) << ("HALY@" + foodsim::discount_label(rate) + "%");
    std::cout << "\n";

    std::ostringstream bau;
    bau << std::left << std::setw(28) << "Business as usual" << std::right << std::setw(10)
        << num(result.bau.expenditure) << std::setw(10) << num(result.bau.grams, 0)
        << std::setw(10) << num(result.bau.energy_kj, 0) << std::setw(8) << num(result.bau.bmi)
        << std::setw(9) << num(result.bau.fruit_g, 1) << std::setw(9) << num(result.bau.veg_g, 1)
        << std::setw(8) << num(result.bau.salt_g) << std::setw(8) << num(result.bau.pufa_g, 3)
        << std::setw(9) << num(result.bau.ssb_ml, 1);
    for (const auto &[rate, haly] : result.bau.haly)
        bau << std::setw(14) << num(haly, 0);
    std::cout << bau.str() << "\n";
    std::cout << "Changes vs BAU:\n";
    std::cout << row("  conventional (no TFEe)", result.conventional) << "\n";
    std::cout << row("  rescaled", result.adjusted) << "\n";
    if (result.adjusted.revealed_tfee)
        std::cout << "\nRevealed TFEe: conventional "
                  << num(*result.conventional.revealed_tfee) << ", rescaled "
                  << num(*result.adjusted.revealed_tfee) << " (applied TFEe "
                  << num(result.applied_tfee, 3) << ", disaggregation scalar "
                  << num(result.applied_disagg_s, 4) << ")\n";
}

void write_text(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw foodsim::Error("cannot write " + path.string());
    out << content;
}

void apply_cli_overrides(ScenarioConfig &config, const std::string &rescale_flag,
                         double tfee_flag, bool tfee_set) {
    if (!rescale_flag.empty()) {
        if (rescale_flag == "energy")
            config.mode = foodsim::RescaleMode::constant_energy();
        else if (rescale_flag == "grams")
            config.mode = foodsim::RescaleMode::constant_grams();
        else if (rescale_flag == "expenditure")
            config.mode = foodsim::RescaleMode::constant_expenditure();
        else if (rescale_flag == "tfee")
            config.mode = foodsim::RescaleMode::tfee_scaled(0.75);
        else
            throw foodsim::ValidationError("unknown rescale mode: " + rescale_flag);
    }
    if (tfee_set) {
        config.tfee_override = tfee_flag;
        config.tfee_dist = foodsim::ParamDistribution::fixed(tfee_flag);
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Food tax/subsidy simulation engine"};
    app.require_subcommand(1);

    std::string config_path;
    std::string rescale_flag;
    double tfee_flag = 0.75;
    bool json_out = false;
    std::string json_path;
    std::string csv_path;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "scenario config (JSON)")->required();
        cmd->add_option("--rescale", rescale_flag,
                        "rescale mode: energy|grams|expenditure|tfee");
        cmd->add_option("--tfee", tfee_flag, "pin the TFEe point value");
        cmd->add_flag("--json", json_out, "print JSON instead of a table");
        cmd->add_option("--json-out", json_path, "write JSON to a file");
        cmd->add_option("--csv-out", csv_path, "write a flat metric CSV");
    };

    auto *validate_cmd = app.add_subcommand("validate", "check a config and its data files");
    validate_cmd->add_option("--config", config_path, "scenario config (JSON)")->required();

    auto *simulate_cmd = app.add_subcommand("simulate", "run the central scenario");
    add_common(simulate_cmd);

    auto *mc_cmd = app.add_subcommand("mc", "Monte Carlo uncertainty analysis");
    add_common(mc_cmd);
    std::size_t iterations = 2000;
    std::uint64_t seed = 1;
    bool serial = false;
    std::string dump_path;
    mc_cmd->add_option("--iterations", iterations, "number of iterations")->capture_default_str();
    mc_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    mc_cmd->add_flag("--serial", serial, "run on one thread (reference mode)");
    mc_cmd->add_option("--dump-iterations", dump_path, "write per-iteration metrics CSV");

    auto *sens_cmd = app.add_subcommand("sensitivity", "univariate percentile sensitivity");
    add_common(sens_cmd);
    std::string param = "tfee";
    std::string percentiles = "2.5,97.5";
    sens_cmd->add_option("--param", param, "tfee|disagg_scalar")->capture_default_str();
    sens_cmd->add_option("--percentiles", percentiles, "low,high percentiles")
        ->capture_default_str();

    auto *disagg_cmd = app.add_subcommand("disaggregate", "expand the PE matrix to food level");
    disagg_cmd->add_option("--config", config_path, "scenario config (JSON)")->required();
    double scalar = 0.025;
    std::string matrix_out = "expanded_pe_matrix.csv";
    std::string audit_out;
    disagg_cmd->add_option("--scalar", scalar, "disaggregation scalar")->capture_default_str();
    disagg_cmd->add_option("--out", matrix_out, "expanded matrix CSV")->capture_default_str();
    disagg_cmd->add_option("--audit", audit_out, "adding-up audit CSV");

    auto *textbox_cmd = app.add_subcommand("textbox", "print the worked three-food example");
    (void)textbox_cmd;

    CLI11_PARSE(app, argc, argv);

    try {
        if (textbox_cmd->parsed()) {
            std::cout << foodsim::textbox_demo();
            return exit_ok;
        }

        ScenarioConfig config = ScenarioConfig::from_json_file(config_path);

        if (validate_cmd->parsed()) {
            const auto report = foodsim::validate_scenario(config);
            for (const auto &w : report.warnings)
                std::cout << "warning: " << w << "\n";
            for (const auto &e : report.errors)
                std::cout << "error: " << e << "\n";
            std::cout << (report.ok() ? "OK" : "FAILED") << " (" << report.errors.size()
                      << " errors, " << report.warnings.size() << " warnings)\n";
            return report.ok() ? exit_ok : exit_validation;
        }

        apply_cli_overrides(config, rescale_flag, tfee_flag,
                            simulate_cmd->count("--tfee") + mc_cmd->count("--tfee") +
                                    sens_cmd->count("--tfee") >
                                0);

        if (simulate_cmd->parsed()) {
            const ScenarioResult result = foodsim::run_scenario(config);
            const json j = result_json(result, config.name);
            if (json_out)
                std::cout << j.dump(2) << "\n";
            else
                print_result_table(result, config.name);
            if (!json_path.empty())
                write_text(json_path, j.dump(2) + "\n");
            if (!csv_path.empty()) {
                std::vector<std::vector<std::string>> rows;
                for (const auto &[key, value] : foodsim::result_metrics(result))
                    rows.push_back({key, foodsim::csv::format_double(value)});
                foodsim::csv::write_file(csv_path, {"metric", "value"}, rows);
            }
            return exit_ok;
        }

        if (mc_cmd->parsed()) {
            const auto data = foodsim::load_scenario_data(config);
            const auto summary = foodsim::run_monte_carlo(
                config, data, iterations, seed,
                serial ? foodsim::ExecutionPolicy::serial : foodsim::ExecutionPolicy::parallel);
            const std::string rendered = foodsim::mc_summary_json(summary, config.name);
            std::cout << rendered;
            if (!json_path.empty())
                write_text(json_path, rendered);
            if (!dump_path.empty()) {
                std::vector<std::string> header{"iteration"};
                std::vector<std::string> keys;
                for (const auto &[key, m] : summary.metrics) {
                    header.push_back(key);
                    keys.push_back(key);
                }
                std::vector<std::vector<std::string>> rows;
                for (std::size_t k = 0; k < summary.iteration_values.size(); ++k) {
                    std::vector<std::string> row{std::to_string(k)};
                    for (const auto &key : keys) {
                        const auto it = summary.iteration_values[k].find(key);
                        row.push_back(it == summary.iteration_values[k].end()
                                          ? ""
                                          : foodsim::csv::format_double(it->second));
                    }
                    rows.push_back(std::move(row));
                }
                foodsim::csv::write_file(dump_path, header, rows);
            }
            return exit_ok;
        }

        if (sens_cmd->parsed()) {
            double lo = 2.5, hi = 97.5;
            if (std::sscanf(percentiles.c_str(), "%lf,%lf", &lo, &hi) != 2)
                throw foodsim::ValidationError("percentiles must look like 2.5,97.5");
            const auto data = foodsim::load_scenario_data(config);
            const auto result = foodsim::univariate_sensitivity(config, data, param, lo, hi);

            json j;
            j["scenario"] = config.name;
            j["param"] = result.param;
            j["central"] = result_json(result.central, config.name);
            j["low"] = {{"value", result.low.pinned_value},
                        {"result", result_json(result.low.result, config.name)}};
            j["high"] = {{"value", result.high.pinned_value},
                         {"result", result_json(result.high.result, config.name)}};
            if (json_out) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "Sensitivity of " << config.name << " to " << param << "\n\n";
                std::cout << "central (" << num(param == "tfee" ? result.central.applied_tfee
                                                                : result.central.applied_disagg_s,
                                                4)
                          << "):\n";
                print_result_table(result.central, config.name);
                std::cout << "\nlow percentile " << lo << " (value "
                          << num(result.low.pinned_value, 4) << "):\n";
                print_result_table(result.low.result, config.name);
                std::cout << "\nhigh percentile " << hi << " (value "
                          << num(result.high.pinned_value, 4) << "):\n";
                print_result_table(result.high.result, config.name);
            }
            if (!json_path.empty())
                write_text(json_path, j.dump(2) + "\n");
            return exit_ok;
        }

        if (disagg_cmd->parsed()) {
            const auto data = foodsim::load_scenario_data(config);
            const auto child = foodsim::expand_matrix(data.parent_pem, data.mapping, scalar);
            foodsim::save_pe_matrix(child, matrix_out);
            const auto audit = foodsim::audit_adding_up(data.parent_pem, data.mapping, child);
            std::cout << "expanded " << data.parent_pem.size() << "x" << data.parent_pem.size()
                      << " -> " << child.size() << "x" << child.size() << " (scalar " << scalar
                      << "), max adding-up error " << audit.max_abs_error << "\n";
            if (!audit_out.empty())
                foodsim::save_adding_up_audit(audit, audit_out);
            std::cout << "wrote " << matrix_out << "\n";
            return exit_ok;
        }
    } catch (const foodsim::ValidationError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
