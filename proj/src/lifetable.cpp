#include "foodsim/lifetable.hpp"

#include <algorithm>
#include <cmath>

#include "foodsim/errors.hpp"

namespace foodsim {

void LagWindow::validate() const {
    if (!(start >= 0.0) || !(end >= start))
        throw ValidationError("lag window requires 0 <= start <= end");
}

double pif(double delta_exposure, double rr_per_unit) {
    if (!(rr_per_unit > 0.0))
        throw ValidationError("relative risk per unit must be > 0");
    return 1.0 - std::pow(rr_per_unit, delta_exposure);
}

double combine_pifs(std::span<const double> pifs) {
    double survive = 1.0;
    for (double p : pifs) {
        if (p >= 1.0)
            throw PifAtUnityError("cannot combine a PIF >= 1");
        survive *= 1.0 - p;
    }
    return 1.0 - survive;
}

double lagged_pif(double pif_value, double t_years, const LagWindow &lag) {
    lag.validate();
    if (t_years < 0.0)
        throw ValidationError("time since policy must be >= 0");
    if (t_years < lag.start)
        return 0.0;
    if (t_years >= lag.end)
        return pif_value;
    return pif_value * (t_years - lag.start) / (lag.end - lag.start);
}

double discount_stream(std::span<const double> values_per_year, double rate) {
    if (rate < 0.0)
        throw NegativeRateError("discount rate must be >= 0");
    double total = 0.0;
    double factor = 1.0;
    for (double v : values_per_year) {
        total += v / factor;
        factor *= 1.0 + rate;
    }
    return total;
}

const DiseaseProcess::AgeRates &DiseaseProcess::rates_at(const std::string &sex, int age) const {
    const auto sex_it = rates.find(sex);
    if (sex_it == rates.end() || sex_it->second.empty())
        throw ValidationError("disease " + id + " has no rates for sex " + sex);
    const auto &by_age = sex_it->second;
    auto it = by_age.upper_bound(age); // first tabulated age > age
    if (it == by_age.begin())
        return it->second; // younger than the table: clamp to youngest
    return std::prev(it)->second; // exact age, or nearest tabulated age below
}

void DiseaseProcess::validate() const {
    if (!(disability_weight >= 0.0 && disability_weight <= 1.0))
        throw ValidationError("disease " + id + ": disability weight must be in [0,1]");
    for (const auto &[sex, by_age] : rates) {
        for (const auto &[age, r] : by_age) {
            if (r.incidence < 0.0 || r.case_fatality < 0.0 || r.remission < 0.0)
                throw NegativeRateError("disease " + id + ": negative rate at age " +
                                        std::to_string(age));
            if (!(r.prevalence >= 0.0 && r.prevalence <= 1.0))
                throw ValidationError("disease " + id + ": prevalence outside [0,1]");
        }
    }
    for (const auto &link : links) {
        if (!(link.rr_per_unit > 0.0))
            throw ValidationError("disease " + id + ": rr_per_unit must be > 0");
        link.lag.validate();
    }
}

void CohortTable::validate() const {
    if (rows.empty())
        throw ValidationError("population table is empty");
    for (const auto &[sex, by_age] : rows) {
        if (by_age.empty())
            throw ValidationError("population table for sex " + sex + " is empty");
        for (const auto &[age, row] : by_age) {
            if (row.count < 0.0)
                throw ValidationError("negative population count at age " + std::to_string(age));
            if (row.mortality < 0.0)
                throw NegativeRateError("negative mortality rate at age " + std::to_string(age));
            if (!(row.pyld >= 0.0 && row.pyld < 1.0))
                throw ValidationError("pYLD outside [0,1) at age " + std::to_string(age));
        }
    }
}

int CohortTable::max_age(const std::string &sex) const {
    const auto it = rows.find(sex);
    if (it == rows.end() || it->second.empty())
        throw ValidationError("no population rows for sex " + sex);
    return it->second.rbegin()->first;
}

std::size_t CohortTable::horizon_years() const {
    std::size_t horizon = 0;
    for (const auto &[sex, by_age] : rows) {
        const int last = by_age.rbegin()->first;
        for (const auto &[age, row] : by_age) {
            if (row.count > 0.0)
                horizon = std::max(horizon, static_cast<std::size_t>(last - age + 1));
        }
    }
    return horizon;
}

namespace {

double rate_to_prob(double rate) { return 1.0 - std::exp(-rate); }

// Annual illness-death recurrence among the alive cohort share. Case
// fatality applies to start-of-year prevalent cases; new cases enter
// prevalence at year end; the proportion renormalizes to disease survivors.
void run_disease_track(const LifetableContext::DiseaseTrack &track,
                       const std::vector<double> &pif_by_year, std::vector<double> &prevalence,
                       std::vector<double> &mortality_rate) {
    const std::size_t years = track.incidence_rate.size();
    prevalence.resize(years);
    mortality_rate.resize(years);

    double p = track.initial_prevalence;
    for (std::size_t t = 0; t < years; ++t) {
        const double pif_t = t < pif_by_year.size()
                                 ? pif_by_year[t]
                                 : (pif_by_year.empty() ? 0.0 : pif_by_year.back());
        const double q_inc = rate_to_prob(track.incidence_rate[t] * (1.0 - pif_t));
        const double q_rem = track.q_remission[t];
        const double q_cf = track.q_case_fatality[t];

        prevalence[t] = p;
        const double dead = p * q_cf;
        mortality_rate[t] = -std::log1p(-dead);

        const double new_cases = (1.0 - p) * q_inc;
        const double next = (p - p * q_rem - dead + new_cases) / (1.0 - dead);
        if (next < -1e-12 || next > 1.0 + 1e-12)
            throw NonConvergenceError("disease prevalence left [0,1]");
        p = std::clamp(next, 0.0, 1.0);
    }
}

} // namespace

LifetableContext LifetableContext::build(const CohortTable &cohorts,
                                         const std::vector<DiseaseProcess> &diseases) {
    cohorts.validate();
    for (const auto &d : diseases)
        d.validate();

    LifetableContext context;
    context.disability_weights.reserve(diseases.size());
    for (const auto &d : diseases)
        context.disability_weights.push_back(d.disability_weight);

    const std::vector<double> no_pif;
    for (const auto &[sex, by_age] : cohorts.rows) {
        const int last_age = by_age.rbegin()->first;
        for (const auto &[start_age, start_row] : by_age) {
            if (start_row.count <= 0.0)
                continue;
            const std::size_t years = static_cast<std::size_t>(last_age - start_age + 1);

            Cohort cohort;
            cohort.count = start_row.count;
            cohort.mortality.resize(years);
            cohort.pyld.resize(years);
            for (std::size_t t = 0; t < years; ++t) {
                const auto &row = by_age.at(start_age + static_cast<int>(t));
                cohort.mortality[t] = row.mortality;
                cohort.pyld[t] = row.pyld;
            }

            cohort.diseases.resize(diseases.size());
            for (std::size_t d = 0; d < diseases.size(); ++d) {
                DiseaseTrack &track = cohort.diseases[d];
                track.incidence_rate.resize(years);
                track.q_remission.resize(years);
                track.q_case_fatality.resize(years);
                track.initial_prevalence = diseases[d].rates_at(sex, start_age).prevalence;
                for (std::size_t t = 0; t < years; ++t) {
                    const auto &r = diseases[d].rates_at(sex, start_age + static_cast<int>(t));
                    track.incidence_rate[t] = r.incidence;
                    track.q_remission[t] = rate_to_prob(r.remission);
                    track.q_case_fatality[t] = rate_to_prob(r.case_fatality);
                }
                run_disease_track(track, no_pif, track.prevalence_bau, track.mortality_rate_bau);
            }
            context.cohorts.push_back(std::move(cohort));
        }
    }
    return context;
}

std::vector<LifetableResult> run_lifetable(const LifetableContext &context,
                                           const std::vector<std::vector<double>> &pif_by_disease_year,
                                           std::span<const double> discount_rates) {
    if (pif_by_disease_year.size() != context.disability_weights.size())
        throw DimensionMismatchError("one PIF path per disease is required");
    for (double rate : discount_rates)
        if (rate < 0.0)
            throw NegativeRateError("discount rate must be >= 0");

    const std::size_t n_diseases = context.disability_weights.size();
    std::vector<LifetableResult> results(discount_rates.size());
    std::vector<double> discount_factors(discount_rates.size());

    std::vector<std::vector<double>> prev_scen(n_diseases), drate_scen(n_diseases);
    for (const auto &cohort : context.cohorts) {
        const std::size_t years = cohort.mortality.size();
        for (std::size_t d = 0; d < n_diseases; ++d)
            run_disease_track(cohort.diseases[d], pif_by_disease_year[d], prev_scen[d],
                              drate_scen[d]);

        double l_bau = cohort.count;
        double l_scen = cohort.count;
        std::fill(discount_factors.begin(), discount_factors.end(), 1.0);

        for (std::size_t t = 0; t < years; ++t) {
            const bool closing = t + 1 == years;

            double extra_mortality = 0.0;
            double extra_yld = 0.0;
            for (std::size_t d = 0; d < n_diseases; ++d) {
                const auto &track = cohort.diseases[d];
                extra_mortality += drate_scen[d][t] - track.mortality_rate_bau[t];
                extra_yld += context.disability_weights[d] *
                             (prev_scen[d][t] - track.prevalence_bau[t]);
            }

            const double q_bau = closing ? 1.0 : rate_to_prob(cohort.mortality[t]);
            const double q_scen =
                closing ? 1.0
                        : rate_to_prob(std::max(cohort.mortality[t] + extra_mortality, 0.0));

            const double l_bau_next = l_bau * (1.0 - q_bau);
            const double l_scen_next = l_scen * (1.0 - q_scen);

            const double w_bau = std::clamp(1.0 - cohort.pyld[t], 0.0, 1.0);
            const double w_scen = std::clamp(1.0 - cohort.pyld[t] - extra_yld, 0.0, 1.0);

            const double haly_bau_t = 0.5 * (l_bau + l_bau_next) * w_bau;
            const double haly_scen_t = 0.5 * (l_scen + l_scen_next) * w_scen;
            for (std::size_t r = 0; r < results.size(); ++r) {
                results[r].haly_bau += haly_bau_t / discount_factors[r];
                results[r].haly_scenario += haly_scen_t / discount_factors[r];
                discount_factors[r] *= 1.0 + discount_rates[r];
            }

            l_bau = l_bau_next;
            l_scen = l_scen_next;
        }
    }
    for (auto &result : results)
        result.delta_haly = result.haly_scenario - result.haly_bau;
    return results;
}

LifetableResult run_lifetable(const CohortTable &cohorts,
                              const std::vector<DiseaseProcess> &diseases,
                              const std::vector<std::vector<double>> &pif_by_disease_year,
                              double discount_rate) {
    const LifetableContext context = LifetableContext::build(cohorts, diseases);
    const double rates[1] = {discount_rate};
    return run_lifetable(context, pif_by_disease_year, rates)[0];
}

std::vector<std::vector<double>> build_pif_paths(const std::vector<DiseaseProcess> &diseases,
                                                 const std::map<std::string, double> &exposure_deltas,
                                                 std::size_t horizon_years) {
    std::vector<std::vector<double>> paths(diseases.size());
    for (std::size_t d = 0; d < diseases.size(); ++d) {
        std::vector<double> link_pifs(diseases[d].links.size());
        for (std::size_t l = 0; l < diseases[d].links.size(); ++l) {
            const auto &link = diseases[d].links[l];
            const auto it = exposure_deltas.find(link.risk_factor);
            if (it == exposure_deltas.end())
                throw UnknownParameterError("no exposure delta for risk factor " +
                                            link.risk_factor);
            link_pifs[l] = pif(it->second, link.rr_per_unit);
        }
        paths[d].resize(horizon_years, 0.0);
        std::vector<double> lagged(link_pifs.size());
        for (std::size_t t = 0; t < horizon_years; ++t) {
            for (std::size_t l = 0; l < link_pifs.size(); ++l)
                lagged[l] = lagged_pif(link_pifs[l], static_cast<double>(t),
                                       diseases[d].links[l].lag);
            paths[d][t] = combine_pifs(lagged);
        }
    }
    return paths;
}

} // namespace foodsim
