#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace foodsim {

/// Years over which a potential impact fraction phases in after the policy
/// starts: zero effect before `start`, full effect from `end`, linear
/// in between.
struct LagWindow {
    double start = 0.0;
    double end = 0.0;

    void validate() const;
};

/// Potential impact fraction for a mean exposure shift under a log-linear
/// relative risk: PIF = 1 - rr_per_unit^delta_exposure. Positive when a
/// harmful exposure (rr > 1) falls.
double pif(double delta_exposure, double rr_per_unit);

/// Multiplicative combination across risk factors: 1 - prod(1 - pif_k).
double combine_pifs(std::span<const double> pifs);

/// Phase-in of a PIF at `t` years since the policy start.
double lagged_pif(double pif_value, double t_years, const LagWindow &lag);

/// Present value of a yearly stream; year 0 is undiscounted.
double discount_stream(std::span<const double> values_per_year, double rate);

/// Links a disease to a risk factor via a relative risk per exposure unit.
struct ExposureLink {
    std::string risk_factor; // "bmi", "salt", "fruit", "veg", "pufa", "ssb", ...
    double rr_per_unit = 1.0;
    LagWindow lag;
};

struct DiseaseProcess {
    struct AgeRates {
        double incidence = 0.0;
        double case_fatality = 0.0;
        double remission = 0.0;
        double prevalence = 0.0;
    };

    std::string id;
    double disability_weight = 0.0;
    std::map<std::string, std::map<int, AgeRates>> rates; // sex -> age -> rates
    std::vector<ExposureLink> links;

    /// Rates for (sex, age); ages outside the tabulated range clamp to the
    /// nearest tabulated age.
    const AgeRates &rates_at(const std::string &sex, int age) const;

    void validate() const;
};

/// Cohort lifetable inputs: per (sex, age) the starting population, the
/// all-cause mortality rate and the prevalent-YLD morbidity adjustment.
/// Every (sex, age) row with count > 0 starts a cohort; the mortality and
/// pyld columns double as the age-indexed rate tables.
struct CohortTable {
    struct AgeRow {
        double count = 0.0;
        double mortality = 0.0;
        double pyld = 0.0;
    };

    std::map<std::string, std::map<int, AgeRow>> rows; // sex -> age

    void validate() const;
    int max_age(const std::string &sex) const;
    /// Longest horizon (years) any cohort runs for.
    std::size_t horizon_years() const;
};

struct LifetableResult {
    double haly_bau = 0.0;
    double haly_scenario = 0.0;
    double delta_haly = 0.0;
};

/// Dense per-cohort tables plus the precomputed business-as-usual disease
/// paths. Building this once and reusing it across Monte Carlo iterations
/// avoids re-walking the age-indexed maps; it is read-only afterwards and
/// safe to share across threads.
struct LifetableContext {
    struct DiseaseTrack {
        std::vector<double> incidence_rate; // by year of the cohort
        std::vector<double> q_remission;
        std::vector<double> q_case_fatality;
        double initial_prevalence = 0.0;
        std::vector<double> prevalence_bau;
        std::vector<double> mortality_rate_bau;
    };
    struct Cohort {
        double count = 0.0;
        std::vector<double> mortality; // all-cause rate by year
        std::vector<double> pyld;
        std::vector<DiseaseTrack> diseases;
    };

    std::vector<Cohort> cohorts;
    std::vector<double> disability_weights; // per disease

    static LifetableContext build(const CohortTable &cohorts,
                                  const std::vector<DiseaseProcess> &diseases);
};

/// Proportional multistate lifetable. `pif_by_disease_year[d][t]` scales
/// disease d's incidence by (1 - PIF) in year t since the policy start;
/// paths shorter than the horizon extend with their last value. Disease
/// prevalence and disease-attributable mortality evolve by a discrete
/// annual illness-death recurrence (rate -> probability via 1 - exp(-r),
/// case fatality on start-of-year prevalent cases); the main table's
/// mortality and (1 - pYLD) weights are adjusted by the scenario-vs-BAU
/// differences. The final tabulated age closes the table. One result per
/// requested discount rate.
std::vector<LifetableResult> run_lifetable(const LifetableContext &context,
                                           const std::vector<std::vector<double>> &pif_by_disease_year,
                                           std::span<const double> discount_rates);

/// Single-rate convenience that builds the context on the fly.
LifetableResult run_lifetable(const CohortTable &cohorts,
                              const std::vector<DiseaseProcess> &diseases,
                              const std::vector<std::vector<double>> &pif_by_disease_year,
                              double discount_rate);

/// Builds PIF time paths from mean exposure shifts: per disease and year,
/// the lagged link PIFs combine multiplicatively. Every linked risk factor
/// must be present in `exposure_deltas`.
std::vector<std::vector<double>> build_pif_paths(const std::vector<DiseaseProcess> &diseases,
                                                 const std::map<std::string, double> &exposure_deltas,
                                                 std::size_t horizon_years);

} // namespace foodsim
