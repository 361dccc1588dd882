#pragma once

#include <filesystem>

#include "foodsim/basket.hpp"
#include "foodsim/disaggregate.hpp"
#include "foodsim/lifetable.hpp"
#include "foodsim/pe_matrix.hpp"
#include "foodsim/rescale.hpp"

namespace foodsim {

/// foods.csv: id,name,group_id,quantity_g_per_day,price_per_100g,
/// energy_kj_per_100g,satfat_g_per_100g,sugar_g_per_100g,salt_g_per_100g,
/// pufa_g_per_100g,fruit_g_per_100g,veg_g_per_100g,ssb_ml_per_100g
Basket load_foods(const std::filesystem::path &path);

/// pe_matrix.csv: first row and first column carry the food/group ids;
/// cells are elasticities. An optional sd file has the same shape.
PEMatrix load_pe_matrix(const std::filesystem::path &path,
                        const std::filesystem::path &sd_path = {});

void save_pe_matrix(const PEMatrix &pem, const std::filesystem::path &path);

/// group_mapping.csv: child_id,parent_id[,share]. Shares may be blank or
/// the column absent; missing shares are later derived from baseline
/// expenditures. Parent order follows first appearance; child order
/// follows file order.
GroupMapping load_group_mapping(const std::filesystem::path &path);

/// expenditure_elasticities.csv: group_id,eta,sd
GroupExpenditureElasticities load_expenditure_elasticities(const std::filesystem::path &path);

/// population.csv: sex,age,count,mortality,pyld
CohortTable load_population(const std::filesystem::path &path);

/// diseases.csv: disease_id,age,sex,incidence,case_fatality,remission,
/// prevalence,dw — joined with rr_links.csv:
/// disease_id,risk_factor,rr_per_unit,lag_start,lag_end
std::vector<DiseaseProcess> load_diseases(const std::filesystem::path &diseases_path,
                                          const std::filesystem::path &rr_links_path);

void save_adding_up_audit(const AddingUpAudit &audit, const std::filesystem::path &path);

} // namespace foodsim
