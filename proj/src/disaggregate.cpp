#include "foodsim/disaggregate.hpp"

#include <cmath>
#include <unordered_set>

#include "foodsim/errors.hpp"

namespace foodsim {

namespace {
constexpr double share_sum_tolerance = 1e-9;
}

const GroupMapping::Group *GroupMapping::find(const std::string &parent_id) const {
    for (const auto &group : groups)
        if (group.parent_id == parent_id)
            return &group;
    return nullptr;
}

std::size_t GroupMapping::child_count() const {
    std::size_t n = 0;
    for (const auto &group : groups)
        n += group.child_ids.size();
    return n;
}

std::vector<std::string> GroupMapping::child_ids_in_order() const {
    std::vector<std::string> ids;
    ids.reserve(child_count());
    for (const auto &group : groups)
        for (const auto &id : group.child_ids)
            ids.push_back(id);
    return ids;
}

void GroupMapping::validate() const {
    std::unordered_set<std::string> seen_parents;
    std::unordered_set<std::string> seen_children;
    for (const auto &group : groups) {
        if (!seen_parents.insert(group.parent_id).second)
            throw ValidationError("duplicate parent group: " + group.parent_id);
        if (group.child_ids.empty())
            throw ValidationError("parent group " + group.parent_id + " has no children");
        if (group.shares.size() != group.child_ids.size())
            throw ValidationError("parent group " + group.parent_id +
                                  ": share count does not match child count");
        double sum = 0.0;
        for (std::size_t i = 0; i < group.child_ids.size(); ++i) {
            if (!seen_children.insert(group.child_ids[i]).second)
                throw ValidationError("child " + group.child_ids[i] +
                                      " appears in more than one parent group");
            if (!(group.shares[i] >= 0.0) || !std::isfinite(group.shares[i]))
                throw ValidationError("child " + group.child_ids[i] + ": invalid share");
            sum += group.shares[i];
        }
        if (std::fabs(sum - 1.0) > share_sum_tolerance)
            throw ValidationError("parent group " + group.parent_id +
                                  ": shares sum to " + std::to_string(sum) + ", expected 1");
    }
}

GroupMapping GroupMapping::identity(const std::vector<std::string> &parent_ids) {
    GroupMapping mapping;
    mapping.groups.reserve(parent_ids.size());
    for (const auto &id : parent_ids)
        mapping.groups.push_back({id, {id}, {1.0}});
    return mapping;
}

void GroupMapping::resolve_shares(const Basket &basket) {
    for (auto &group : groups) {
        if (!group.shares.empty())
            continue;
        double total = 0.0;
        std::vector<double> expenditures(group.child_ids.size(), 0.0);
        for (std::size_t i = 0; i < group.child_ids.size(); ++i) {
            const auto idx = basket.index_of(group.child_ids[i]);
            if (!idx)
                throw MappingGapError("mapped child " + group.child_ids[i] +
                                      " is not in the basket");
            expenditures[i] = basket.expenditure(*idx);
            total += expenditures[i];
        }
        if (total <= 0.0)
            throw ZeroExpenditureError("parent group " + group.parent_id +
                                       " has zero baseline expenditure; cannot derive shares");
        group.shares.resize(expenditures.size());
        for (std::size_t i = 0; i < expenditures.size(); ++i)
            group.shares[i] = expenditures[i] / total;
    }
}

double child_own_pe(double parent_own, std::size_t n_children, double s) {
    if (parent_own > 0.0)
        throw PositiveOwnPeError("parent own-PE must be <= 0, got " + std::to_string(parent_own));
    if (s < 0.0)
        throw ValidationError("disaggregation scalar must be >= 0");
    if (n_children < 1)
        throw ValidationError("a group needs at least one child");
    if (n_children == 1)
        return parent_own;
    return parent_own * (1.0 + static_cast<double>(n_children) * s);
}

std::vector<double> within_group_cross_pes(const std::vector<double> &child_owns,
                                           double parent_own,
                                           const std::vector<double> &shares) {
    const std::size_t m = child_owns.size();
    if (shares.size() != m)
        throw DimensionMismatchError("child own-PE count does not match share count");
    if (m == 1)
        return {parent_own}; // single child: no disaggregation

    std::vector<double> block(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (std::fabs(child_owns[i]) < std::fabs(parent_own) - share_sum_tolerance)
            throw ValidationError("child own-PE weaker than parent own-PE");
        if (shares[i] >= 1.0)
            throw DegenerateShareError("share of 1 in a multi-child group");
        const double excess = std::fabs(child_owns[i]) - std::fabs(parent_own);
        for (std::size_t j = 0; j < m; ++j) {
            block[i * m + j] = i == j ? child_owns[i]
                                      : shares[j] / (1.0 - shares[i]) * excess;
        }
    }
    return block;
}

std::vector<double> cross_group_block(double parent_cross, const std::vector<double> &shares_b,
                                      std::size_t m_a) {
    const std::size_t m_b = shares_b.size();
    std::vector<double> block(m_a * m_b, 0.0);
    for (std::size_t a = 0; a < m_a; ++a)
        for (std::size_t b = 0; b < m_b; ++b)
            block[a * m_b + b] = parent_cross * shares_b[b];
    return block;
}

PEMatrix expand_matrix(const PEMatrix &parent, const GroupMapping &mapping, double s) {
    mapping.validate();
    const std::size_t np = parent.size();
    std::vector<const GroupMapping::Group *> groups(np, nullptr);
    for (std::size_t g = 0; g < np; ++g) {
        groups[g] = mapping.find(parent.food_ids[g]);
        if (!groups[g])
            throw MappingGapError("no mapping for parent group " + parent.food_ids[g]);
    }

    PEMatrix child = PEMatrix::zeros({});
    for (std::size_t g = 0; g < np; ++g)
        for (const auto &id : groups[g]->child_ids)
            child.food_ids.push_back(id);
    const std::size_t nc = child.food_ids.size();
    child.values.assign(nc * nc, 0.0);

    std::vector<std::size_t> offsets(np, 0);
    for (std::size_t g = 1; g < np; ++g)
        offsets[g] = offsets[g - 1] + groups[g - 1]->child_ids.size();

    for (std::size_t ga = 0; ga < np; ++ga) {
        const std::size_t ma = groups[ga]->child_ids.size();
        for (std::size_t gb = 0; gb < np; ++gb) {
            const std::size_t mb = groups[gb]->child_ids.size();
            std::vector<double> block;
            if (ga == gb) {
                const double parent_own = parent.at(ga, ga);
                std::vector<double> owns(ma, child_own_pe(parent_own, ma, s));
                block = within_group_cross_pes(owns, parent_own, groups[ga]->shares);
            } else {
                block = cross_group_block(parent.at(ga, gb), groups[gb]->shares, ma);
            }
            for (std::size_t a = 0; a < ma; ++a)
                for (std::size_t b = 0; b < mb; ++b)
                    child.at(offsets[ga] + a, offsets[gb] + b) = block[a * mb + b];
        }
    }
    return child;
}

AddingUpAudit audit_adding_up(const PEMatrix &parent, const GroupMapping &mapping,
                              const PEMatrix &child) {
    AddingUpAudit audit;
    const std::size_t np = parent.size();

    std::vector<const GroupMapping::Group *> groups(np, nullptr);
    std::vector<std::size_t> offsets(np, 0);
    std::size_t offset = 0;
    for (std::size_t g = 0; g < np; ++g) {
        groups[g] = mapping.find(parent.food_ids[g]);
        if (!groups[g])
            throw MappingGapError("no mapping for parent group " + parent.food_ids[g]);
        offsets[g] = offset;
        offset += groups[g]->child_ids.size();
    }
    if (offset != child.size())
        throw DimensionMismatchError("child matrix size does not match the mapping");

    for (std::size_t ga = 0; ga < np; ++ga) {
        for (std::size_t a = 0; a < groups[ga]->child_ids.size(); ++a) {
            const std::size_t row = offsets[ga] + a;
            for (std::size_t gb = 0; gb < np; ++gb) {
                double sum = 0.0;
                for (std::size_t b = 0; b < groups[gb]->child_ids.size(); ++b)
                    sum += child.at(row, offsets[gb] + b);
                AddingUpRow entry;
                entry.child_id = groups[ga]->child_ids[a];
                entry.row_parent_id = parent.food_ids[ga];
                entry.col_parent_id = parent.food_ids[gb];
                entry.block_sum = sum;
                entry.parent_value = parent.at(ga, gb);
                entry.abs_error = std::fabs(sum - entry.parent_value);
                audit.max_abs_error = std::max(audit.max_abs_error, entry.abs_error);
                audit.rows.push_back(std::move(entry));
            }
        }
    }
    return audit;
}

} // namespace foodsim
