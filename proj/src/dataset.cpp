#include "foodsim/dataset.hpp"

#include <algorithm>

#include "foodsim/csv.hpp"
#include "foodsim/errors.hpp"

namespace foodsim {

Basket load_foods(const std::filesystem::path &path) {
    const auto table = csv::read_file(path);
    const std::size_t c_id = table.column("id");
    const std::size_t c_name = table.column("name");
    const std::size_t c_group = table.column("group_id");
    const std::size_t c_qty = table.column("quantity_g_per_day");
    const std::size_t c_price = table.column("price_per_100g");
    const std::size_t c_energy = table.column("energy_kj_per_100g");
    const std::size_t c_satfat = table.column("satfat_g_per_100g");
    const std::size_t c_sugar = table.column("sugar_g_per_100g");
    const std::size_t c_salt = table.column("salt_g_per_100g");
    const std::size_t c_pufa = table.column("pufa_g_per_100g");
    const std::size_t c_fruit = table.column("fruit_g_per_100g");
    const std::size_t c_veg = table.column("veg_g_per_100g");
    const std::size_t c_ssb = table.column("ssb_ml_per_100g");

    std::vector<FoodItem> items;
    items.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        FoodItem item;
        item.id = table.rows[r][c_id];
        item.name = table.rows[r][c_name];
        item.group_id = table.rows[r][c_group];
        item.quantity_g = csv::to_double(table, r, c_qty);
        item.price_per_100g = csv::to_double(table, r, c_price);
        item.composition.energy_kj = csv::to_double(table, r, c_energy);
        item.composition.satfat_g = csv::to_double(table, r, c_satfat);
        item.composition.sugar_g = csv::to_double(table, r, c_sugar);
        item.composition.salt_g = csv::to_double(table, r, c_salt);
        item.composition.pufa_g = csv::to_double(table, r, c_pufa);
        item.composition.fruit_g = csv::to_double(table, r, c_fruit);
        item.composition.veg_g = csv::to_double(table, r, c_veg);
        item.composition.ssb_ml = csv::to_double(table, r, c_ssb);
        items.push_back(std::move(item));
    }
    return Basket(std::move(items));
}

namespace {

PEMatrix read_matrix_values(const std::filesystem::path &path) {
    const auto table = csv::read_file(path);
    PEMatrix pem;
    pem.food_ids.assign(table.header.begin() + 1, table.header.end());
    const std::size_t n = pem.food_ids.size();
    if (table.rows.size() != n)
        throw ParseError(path.string() + ": expected " + std::to_string(n) + " data rows, got " +
                         std::to_string(table.rows.size()));
    pem.values.resize(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        if (table.rows[r][0] != pem.food_ids[r])
            throw ParseError(path.string() + ": row id '" + table.rows[r][0] +
                             "' does not match column id '" + pem.food_ids[r] + "'");
        for (std::size_t c = 0; c < n; ++c)
            pem.values[r * n + c] = csv::to_double(table, r, c + 1);
    }
    return pem;
}

} // namespace

PEMatrix load_pe_matrix(const std::filesystem::path &path, const std::filesystem::path &sd_path) {
    PEMatrix pem = read_matrix_values(path);
    if (!sd_path.empty()) {
        const PEMatrix sd = read_matrix_values(sd_path);
        if (sd.food_ids != pem.food_ids)
            throw ParseError(sd_path.string() + ": sd matrix ids differ from the elasticity matrix");
        pem.sd = sd.values;
        for (double s : pem.sd)
            if (s < 0.0)
                throw ValidationError(sd_path.string() + ": negative standard deviation");
    }
    return pem;
}

void save_pe_matrix(const PEMatrix &pem, const std::filesystem::path &path) {
    const std::size_t n = pem.size();
    std::vector<std::string> header;
    header.reserve(n + 1);
    header.push_back("id");
    for (const auto &id : pem.food_ids)
        header.push_back(id);
    std::vector<std::vector<std::string>> rows(n);
    for (std::size_t r = 0; r < n; ++r) {
        rows[r].reserve(n + 1);
        rows[r].push_back(pem.food_ids[r]);
        for (std::size_t c = 0; c < n; ++c)
            rows[r].push_back(csv::format_double(pem.at(r, c)));
    }
    csv::write_file(path, header, rows);
}

GroupMapping load_group_mapping(const std::filesystem::path &path) {
    const auto table = csv::read_file(path);
    const std::size_t c_child = table.column("child_id");
    const std::size_t c_parent = table.column("parent_id");
    const bool has_share = table.has_column("share");
    const std::size_t c_share = has_share ? table.column("share") : 0;

    GroupMapping mapping;
    bool any_share = false;
    bool any_blank = false;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string &parent = table.rows[r][c_parent];
        GroupMapping::Group *group = nullptr;
        for (auto &g : mapping.groups)
            if (g.parent_id == parent)
                group = &g;
        if (!group) {
            mapping.groups.push_back({parent, {}, {}});
            group = &mapping.groups.back();
        }
        group->child_ids.push_back(table.rows[r][c_child]);
        if (has_share && !table.rows[r][c_share].empty()) {
            group->shares.push_back(csv::to_double(table, r, c_share));
            any_share = true;
        } else {
            any_blank = true;
        }
    }
    if (any_share && any_blank)
        throw ParseError(path.string() + ": shares must be given for all rows or none");
    if (!any_share)
        for (auto &g : mapping.groups)
            g.shares.clear(); // derived later from baseline expenditures
    return mapping;
}

GroupExpenditureElasticities load_expenditure_elasticities(const std::filesystem::path &path) {
    const auto table = csv::read_file(path);
    const std::size_t c_group = table.column("group_id");
    const std::size_t c_eta = table.column("eta");
    const bool has_sd = table.has_column("sd");
    const std::size_t c_sd = has_sd ? table.column("sd") : 0;

    GroupExpenditureElasticities out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string &group = table.rows[r][c_group];
        if (out.eta.count(group))
            throw ParseError(path.string() + ": duplicate group " + group);
        out.eta[group] = csv::to_double(table, r, c_eta);
        if (has_sd)
            out.sd[group] = csv::to_double(table, r, c_sd);
    }
    return out;
}

CohortTable load_population(const std::filesystem::path &path) {
    const auto table = csv::read_file(path);
    const std::size_t c_sex = table.column("sex");
    const std::size_t c_age = table.column("age");
    const std::size_t c_count = table.column("count");
    const std::size_t c_mort = table.column("mortality");
    const std::size_t c_pyld = table.column("pyld");

    CohortTable cohorts;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string &sex = table.rows[r][c_sex];
        const int age = static_cast<int>(csv::to_double(table, r, c_age));
        CohortTable::AgeRow row;
        row.count = csv::to_double(table, r, c_count);
        row.mortality = csv::to_double(table, r, c_mort);
        row.pyld = csv::to_double(table, r, c_pyld);
        if (!cohorts.rows[sex].emplace(age, row).second)
            throw ParseError(path.string() + ": duplicate (sex, age) row at age " +
                             std::to_string(age));
    }
    cohorts.validate();
    return cohorts;
}

std::vector<DiseaseProcess> load_diseases(const std::filesystem::path &diseases_path,
                                          const std::filesystem::path &rr_links_path) {
    const auto table = csv::read_file(diseases_path);
    const std::size_t c_id = table.column("disease_id");
    const std::size_t c_age = table.column("age");
    const std::size_t c_sex = table.column("sex");
    const std::size_t c_inc = table.column("incidence");
    const std::size_t c_cf = table.column("case_fatality");
    const std::size_t c_rem = table.column("remission");
    const std::size_t c_prev = table.column("prevalence");
    const std::size_t c_dw = table.column("dw");

    std::vector<DiseaseProcess> diseases;
    const auto find_disease = [&diseases](const std::string &id) -> DiseaseProcess * {
        for (auto &d : diseases)
            if (d.id == id)
                return &d;
        return nullptr;
    };

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string &id = table.rows[r][c_id];
        DiseaseProcess *disease = find_disease(id);
        if (!disease) {
            diseases.push_back({});
            disease = &diseases.back();
            disease->id = id;
            disease->disability_weight = csv::to_double(table, r, c_dw);
        } else if (disease->disability_weight != csv::to_double(table, r, c_dw)) {
            throw ParseError(diseases_path.string() + ": disability weight varies within disease " +
                             id);
        }
        DiseaseProcess::AgeRates rates;
        rates.incidence = csv::to_double(table, r, c_inc);
        rates.case_fatality = csv::to_double(table, r, c_cf);
        rates.remission = csv::to_double(table, r, c_rem);
        rates.prevalence = csv::to_double(table, r, c_prev);
        const int age = static_cast<int>(csv::to_double(table, r, c_age));
        if (!disease->rates[table.rows[r][c_sex]].emplace(age, rates).second)
            throw ParseError(diseases_path.string() + ": duplicate (disease, sex, age) row for " +
                             id + " at age " + std::to_string(age));
    }

    const auto links = csv::read_file(rr_links_path);
    const std::size_t l_id = links.column("disease_id");
    const std::size_t l_factor = links.column("risk_factor");
    const std::size_t l_rr = links.column("rr_per_unit");
    const std::size_t l_start = links.column("lag_start");
    const std::size_t l_end = links.column("lag_end");
    for (std::size_t r = 0; r < links.rows.size(); ++r) {
        DiseaseProcess *disease = find_disease(links.rows[r][l_id]);
        if (!disease)
            throw ParseError(rr_links_path.string() + ": link references unknown disease " +
                             links.rows[r][l_id]);
        ExposureLink link;
        link.risk_factor = links.rows[r][l_factor];
        link.rr_per_unit = csv::to_double(links, r, l_rr);
        link.lag.start = csv::to_double(links, r, l_start);
        link.lag.end = csv::to_double(links, r, l_end);
        disease->links.push_back(std::move(link));
    }

    for (const auto &d : diseases)
        d.validate();
    return diseases;
}

void save_adding_up_audit(const AddingUpAudit &audit, const std::filesystem::path &path) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(audit.rows.size());
    for (const auto &row : audit.rows)
        rows.push_back({row.child_id, row.row_parent_id, row.col_parent_id,
                        csv::format_double(row.block_sum), csv::format_double(row.parent_value),
                        csv::format_double(row.abs_error)});
    csv::write_file(path, {"child_id", "row_parent", "col_parent", "block_sum", "parent_value",
                           "abs_error"},
                    rows);
}

} // namespace foodsim
