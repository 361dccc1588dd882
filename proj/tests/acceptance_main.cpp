// Acceptance suite: one gate per release criterion, each printed as a
// single PASS/FAIL line with its runtime. Exit code is the number of
// failed gates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "foodsim/demand.hpp"
#include "foodsim/disaggregate.hpp"
#include "foodsim/distributions.hpp"
#include "foodsim/monte_carlo.hpp"
#include "foodsim/nutrition.hpp"
#include "foodsim/policy.hpp"
#include "foodsim/rescale.hpp"
#include "foodsim/scenario.hpp"
#include "foodsim/textbox.hpp"
#include "lifetable_toy.hpp"

namespace {

namespace fs = std::filesystem;
using namespace foodsim;

const fs::path source_dir = FOODSIM_SOURCE_DIR;

struct Gate {
    int number;
    std::string description;
    double time_limit_s;
    std::function<void(std::ostringstream &)> run; // throws or appends to the failure note
};

bool near(double actual, double expected, double tolerance) {
    return std::fabs(actual - expected) <= tolerance;
}

bool near_rel(double actual, double expected, double rel_tolerance) {
    return std::fabs(actual - expected) <= rel_tolerance * std::fabs(expected);
}

void require(std::ostringstream &fail, bool condition, const std::string &what) {
    if (!condition)
        fail << (fail.str().empty() ? "" : "; ") << what;
}

// ---------------------------------------------------------------------------

void criterion_textbox_home(std::ostringstream &fail) {
    const auto report = run_textbox(textbox_setting(1));
    require(fail, near_rel(report.post[0].quantity_g, 60.0, 5e-5), "fruit != 60 g");
    require(fail, near_rel(report.post[1].quantity_g, 188.0, 5e-5), "vegetables != 188 g");
    require(fail, near_rel(report.post[2].quantity_g, 202.0, 5e-5), "cereals != 202 g");

    const DailyTotals pre = nutrient_totals(textbox_setting(1).baseline);
    const DailyTotals post = nutrient_totals(report.post);
    require(fail, near_rel(pre.nutrients.energy_kj, 1375.0, 5e-5), "baseline energy != 1375");
    require(fail, near_rel(post.nutrients.energy_kj, 1382.0, 5e-5), "post energy != 1382");
    require(fail, near(report.energy_change * 100.0, 0.51, 0.005), "energy change != +0.51%");
    require(fail, near(report.expenditure_change * 100.0, 0.0, 0.005),
            "baseline-price expenditure change != 0.00%");
}

void criterion_textbox_transplanted(std::ostringstream &fail) {
    const auto home = run_textbox(textbox_setting(1));
    const auto away = run_textbox(textbox_setting(2));
    require(fail, near_rel(away.post[0].quantity_g, 120.0, 5e-5), "fruit != 120 g");
    require(fail, near_rel(away.post[1].quantity_g, 94.0, 5e-5), "vegetables != 94 g");
    require(fail, near_rel(away.post[2].quantity_g, 202.0, 5e-5), "cereals != 202 g");
    require(fail, near(away.energy_change * 100.0, 2.38, 0.005), "energy change != +2.38%");
    require(fail, near(away.expenditure_change * 100.0, 2.41, 0.005),
            "baseline-price expenditure change != +2.41%");
    require(fail, away.energy_change / home.energy_change > 4.0,
            "distortion ratio not > 4x");
}

void criterion_disaggregation_golden(std::ostringstream &fail) {
    const std::vector<double> shares{0.20, 0.40, 0.20, 0.10, 0.10};
    const double own = child_own_pe(-1.0, 5, 0.025);
    require(fail, near(own, -1.125, 1e-12), "child own-PE != -1.125");

    const auto block = within_group_cross_pes(std::vector<double>(5, own), -1.0, shares);
    require(fail, near(block[1], 0.0625, 1e-12), "cross 2->1 != 0.0625");
    require(fail, near(block[2], 0.03125, 1e-12), "cross 3->1 != 0.03125");
    require(fail, near(block[3], 0.015625, 1e-12), "cross 4->1 != 0.015625");
    require(fail, near(block[4], 0.015625, 1e-12), "cross 5->1 != 0.015625");
    for (std::size_t i = 0; i < 5; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < 5; ++j)
            sum += block[i * 5 + j];
        require(fail, near(sum, -1.0, 1e-9),
                "row " + std::to_string(i + 1) + " sum != parent own-PE");
    }
}

void criterion_adding_up_property(std::ostringstream &fail) {
    std::mt19937 gen(24601);
    std::uniform_int_distribution<int> n_dist(1, 10);
    std::uniform_int_distribution<int> m_dist(1, 8);
    std::uniform_real_distribution<double> own_dist(-2.0, -0.1);
    std::uniform_real_distribution<double> cross_dist(-0.3, 0.3);
    std::uniform_real_distribution<double> share_dist(0.05, 1.0);
    std::uniform_real_distribution<double> s_dist(0.0, 0.05);

    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = n_dist(gen);
        PEMatrix parent;
        for (int g = 0; g < n; ++g)
            parent.food_ids.push_back("g" + std::to_string(g));
        parent.values.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                parent.values[static_cast<std::size_t>(i) * n + j] =
                    i == j ? own_dist(gen) : cross_dist(gen);

        GroupMapping mapping;
        for (int g = 0; g < n; ++g) {
            GroupMapping::Group group;
            group.parent_id = parent.food_ids[static_cast<std::size_t>(g)];
            const int m = m_dist(gen);
            std::vector<double> raw(m);
            double total = 0.0;
            for (auto &r : raw)
                total += r = share_dist(gen);
            for (int c = 0; c < m; ++c) {
                group.child_ids.push_back(group.parent_id + "_c" + std::to_string(c));
                group.shares.push_back(raw[static_cast<std::size_t>(c)] / total);
            }
            mapping.groups.push_back(std::move(group));
        }

        const PEMatrix child = expand_matrix(parent, mapping, s_dist(gen));
        worst = std::max(worst, audit_adding_up(parent, mapping, child).max_abs_error);

        // s = 0 under the identity mapping reproduces the parent exactly
        const PEMatrix same = expand_matrix(parent, GroupMapping::identity(parent.food_ids), 0.0);
        for (std::size_t i = 0; i < parent.size(); ++i)
            for (std::size_t j = 0; j < parent.size(); ++j)
                require(fail, same.at(i, j) == parent.at(i, j),
                        "identity mapping at s=0 changed an entry");
    }
    require(fail, worst <= 1e-9,
            "adding-up error " + std::to_string(worst) + " above 1e-9");
}

void criterion_tfee_exactness(std::ostringstream &fail) {
    require(fail, near(revealed_tfee(-0.0192, 0.0391), -0.49, 0.005),
            "revealed TFEe of (-1.92%, 3.91%) != -0.49");

    std::mt19937 gen(5150);
    std::uniform_int_distribution<int> n_dist(2, 6);
    std::uniform_real_distribution<double> q_dist(20.0, 400.0);
    std::uniform_real_distribution<double> p_dist(0.2, 2.0);
    std::uniform_real_distribution<double> own_dist(-1.6, -0.4);
    std::uniform_real_distribution<double> cross_dist(-0.15, 0.15);
    std::uniform_real_distribution<double> frac_dist(-0.25, 0.35);
    std::uniform_real_distribution<double> eta_dist(0.2, 1.5);
    std::uniform_real_distribution<double> tfee_dist(0.05, 0.95);

    int checked = 0;
    int attempts = 0;
    while (checked < 100 && attempts < 1000) {
        ++attempts;
        const int n = n_dist(gen);
        std::vector<FoodItem> items;
        GroupExpenditureElasticities eta;
        for (int i = 0; i < n; ++i) {
            FoodItem item;
            item.id = "f" + std::to_string(i);
            item.name = item.id;
            item.group_id = "grp" + std::to_string(i);
            item.quantity_g = q_dist(gen);
            item.price_per_100g = p_dist(gen);
            item.composition.energy_kj = 100.0;
            items.push_back(std::move(item));
            eta.eta["grp" + std::to_string(i)] = eta_dist(gen);
        }
        const Basket baseline(items);

        PEMatrix pem;
        for (int i = 0; i < n; ++i)
            pem.food_ids.push_back("f" + std::to_string(i));
        pem.values.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                pem.values[static_cast<std::size_t>(i) * n + j] =
                    i == j ? own_dist(gen) : cross_dist(gen);

        PriceChange dp;
        dp.delta.resize(static_cast<std::size_t>(n));
        for (auto &d : dp.delta)
            d = frac_dist(gen);

        const double dfpi = fpi_change(baseline, dp);
        if (std::fabs(dfpi) < 1e-4)
            continue;
        const auto pe = apply_pe_matrix(baseline, pem, dp);
        if (pe.floored_count > 0)
            continue;

        const double tfee = tfee_dist(gen);
        const auto rescaled = apply_mode(pe.basket, RescaleMode::tfee_scaled(tfee), baseline, eta);
        if (rescaled.floored_count > 0)
            continue;
        const double revealed =
            revealed_tfee(expenditure_change(baseline, rescaled.basket), dfpi);
        require(fail, near(revealed, tfee, 1e-9),
                "revealed " + std::to_string(revealed) + " != configured " +
                    std::to_string(tfee));
        ++checked;
    }
    require(fail, checked == 100,
            "only " + std::to_string(checked) + " of 100 random pipelines ran unfloored");
}

void criterion_distributions(std::ostringstream &fail) {
    Rng rng(198712);
    const auto beta = ParamDistribution::beta(6.0, 2.0);
    std::vector<double> draws(100000);
    double sum = 0.0;
    for (auto &v : draws)
        sum += v = sample(beta, rng);
    std::sort(draws.begin(), draws.end());
    require(fail, near(sum / static_cast<double>(draws.size()), 0.75, 0.01),
            "Beta(6,2) mean off by more than 0.01");
    require(fail, near(percentile(draws, 2.5), 0.42, 0.02), "Beta(6,2) p2.5 != 0.42 +- 0.02");
    require(fail, near(percentile(draws, 97.5), 0.96, 0.01), "Beta(6,2) p97.5 != 0.96 +- 0.01");

    const auto normal = ParamDistribution::normal(0.025, 0.0125);
    require(fail, near(normal.quantile(0.025), 0.0005, 0.002),
            "Normal(0.025, 0.0125) p2.5 != 0.0005 +- 0.002");
    require(fail, near(normal.quantile(0.975), 0.0495, 0.002),
            "Normal(0.025, 0.0125) p97.5 != 0.0495 +- 0.002");
    std::vector<double> ndraws(100000);
    for (auto &v : ndraws)
        v = sample(normal, rng);
    std::sort(ndraws.begin(), ndraws.end());
    require(fail, near(percentile(ndraws, 2.5), 0.0005, 0.002), "sampled normal p2.5 off");
    require(fail, near(percentile(ndraws, 97.5), 0.0495, 0.002), "sampled normal p97.5 off");
}

void criterion_lifetable_oracle(std::ostringstream &fail) {
    const CohortTable cohorts = test::toy_cohort();
    const std::vector<DiseaseProcess> diseases{test::toy_disease()};

    const std::vector<std::vector<double>> none{{}};
    const LifetableResult null_run = run_lifetable(cohorts, diseases, none, 0.0);
    require(fail, null_run.delta_haly == 0.0, "PIF = 0 delta HALY not exactly zero");

    const std::vector<std::vector<double>> eliminate{{1.0, 1.0, 1.0}};
    const LifetableResult d0 = run_lifetable(cohorts, diseases, eliminate, 0.0);
    const LifetableResult d3 = run_lifetable(cohorts, diseases, eliminate, 0.03);
    const test::ToyExpectation brute0 = test::toy_brute_force(1.0, 0.0);
    const test::ToyExpectation brute3 = test::toy_brute_force(1.0, 0.03);

    require(fail, near_rel(d0.delta_haly, brute0.delta_haly, 1e-9),
            "delta HALY differs from the brute-force recurrence");
    require(fail, near_rel(d0.delta_haly, test::toy_expected_delta_d0, 1e-9),
            "delta HALY differs from the committed fixture (0%)");
    require(fail, near_rel(d3.delta_haly, brute3.delta_haly, 1e-9),
            "3% delta HALY differs from the brute-force recurrence");
    require(fail, near_rel(d3.delta_haly, test::toy_expected_delta_d3, 1e-9),
            "3% delta HALY differs from the committed fixture");
    require(fail, std::fabs(d3.delta_haly) <= std::fabs(d0.delta_haly),
            "discounted gain exceeds the undiscounted gain");
}

void criterion_mc_determinism(std::ostringstream &fail) {
    const ScenarioConfig config =
        ScenarioConfig::from_json_file(source_dir / "data" / "scenarios" / "fv_subsidy.json");
    const ScenarioData data = load_scenario_data(config);

    const McSummary parallel_a = run_monte_carlo(config, data, 2000, 42,
                                                 ExecutionPolicy::parallel);
    const McSummary parallel_b = run_monte_carlo(config, data, 2000, 42,
                                                 ExecutionPolicy::parallel);
    const McSummary serial = run_monte_carlo(config, data, 2000, 42, ExecutionPolicy::serial);

    const std::string json_a = mc_summary_json(parallel_a, config.name);
    const std::string json_b = mc_summary_json(parallel_b, config.name);
    const std::string json_s = mc_summary_json(serial, config.name);
    require(fail, json_a == json_b, "two parallel runs differ");
    require(fail, json_a == json_s, "serial and parallel runs differ");
    require(fail, !json_a.empty() && json_a.find("metrics") != std::string::npos,
            "summary JSON looks malformed");
}

void criterion_desk_properties(std::ostringstream &fail) {
    for (const std::string policy : {"safa_tax", "sugar_tax", "fv_subsidy"}) {
        const ScenarioConfig config = ScenarioConfig::from_json_file(
            source_dir / "data" / "scenarios" / (policy + ".json"));
        const ScenarioData data = load_scenario_data(config);
        const ScenarioResult result =
            simulate_scenario(config, data, central_draw(config, data));
        const bool is_tax = policy != "fv_subsidy";

        // (a) conventional expenditure moves against economic expectation,
        // the TFEe adjustment restores it
        require(fail, (result.conventional.expenditure_change < 0.0) == is_tax,
                policy + ": conventional expenditure sign not reversed");
        require(fail, (result.adjusted.expenditure_change > 0.0) == is_tax,
                policy + ": adjusted expenditure sign not economic");

        // (b) sensitivity sign pattern
        const auto sens = univariate_sensitivity(config, data, "tfee");
        if (is_tax) {
            require(fail,
                    sens.low.result.adjusted.energy_change_kj <
                        sens.high.result.adjusted.energy_change_kj,
                    policy + ": low TFEe does not deepen the energy cut");
        } else {
            require(fail,
                    sens.low.result.adjusted.haly_delta[0].second <
                        sens.high.result.adjusted.haly_delta[0].second,
                    policy + ": low TFEe does not shrink the health gain");
        }
    }
}

} // namespace

int main() {
    const std::vector<Gate> gates = {
        {1, "three-food worked example, home setting (60/188/202 g, +0.51% energy, 0.00% expenditure)", 1.0,
         criterion_textbox_home},
        {2, "three-food worked example, transplanted setting (120/94/202 g, +2.38% energy, +2.41% expenditure, >4x distortion)", 1.0,
         criterion_textbox_transplanted},
        {3, "disaggregation worked example (-1.125 own-PE, 0.0625/0.03125/0.015625 crosses, row sums)", 1.0,
         criterion_disaggregation_golden},
        {4, "adding-up property over 200 random matrices and mappings (<= 1e-9)", 10.0,
         criterion_adding_up_property},
        {5, "TFEe exactness on 100 random pipelines (1e-9) and revealed -0.49", 5.0,
         criterion_tfee_exactness},
        {6, "Beta(6,2) and Normal(0.025, 0.0125) sampling moments and quantiles", 5.0,
         criterion_distributions},
        {7, "lifetable toy oracle vs brute force and committed fixture (1e-9)", 1.0,
         criterion_lifetable_oracle},
        {8, "Monte Carlo n=2000: byte-identical JSON across runs and serial/parallel", 60.0,
         criterion_mc_determinism},
        {9, "desk dataset: expenditure sign reversal and TFEe sensitivity sign pattern", 30.0,
         criterion_desk_properties},
    };

    int failures = 0;
    for (const auto &gate : gates) {
        std::ostringstream fail;
        const auto start = std::chrono::steady_clock::now();
        try {
            gate.run(fail);
        } catch (const std::exception &e) {
            fail << (fail.str().empty() ? "" : "; ") << "exception: " << e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > gate.time_limit_s)
            fail << (fail.str().empty() ? "" : "; ") << "took " << elapsed << "s (limit "
                 << gate.time_limit_s << "s)";

        if (fail.str().empty()) {
            std::printf("PASS  criterion %d (%.2fs): %s\n", gate.number, elapsed,
                        gate.description.c_str());
        } else {
            ++failures;
            std::printf("FAIL  criterion %d (%.2fs): %s -- %s\n", gate.number, elapsed,
                        gate.description.c_str(), fail.str().c_str());
        }
    }
    if (failures)
        std::printf("%d of %zu acceptance criteria failed\n", failures, gates.size());
    else
        std::printf("all %zu acceptance criteria passed\n", gates.size());
    return failures == 0 ? 0 : 1;
}
