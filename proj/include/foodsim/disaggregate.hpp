#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "foodsim/basket.hpp"
#include "foodsim/pe_matrix.hpp"

namespace foodsim {

/// Per-subgroup strengthening of own-price elasticities when an aggregate
/// food group is split. s is a fraction per child; sampled values are
/// clamped at zero.
struct DisaggScalar {
    double s = 0.025;
    double sd = 0.0125; // on the normal scale
};

/// Parent group -> ordered children with within-group expenditure shares.
struct GroupMapping {
    struct Group {
        std::string parent_id;
        std::vector<std::string> child_ids;
        std::vector<double> shares; // per-parent, sums to 1
    };

    std::vector<Group> groups;

    const Group *find(const std::string &parent_id) const;
    std::size_t child_count() const;
    std::vector<std::string> child_ids_in_order() const;

    /// Invariant checks: each parent has >= 1 child, children globally
    /// unique, per-parent shares sum to 1 (tolerance 1e-9).
    void validate() const;

    /// One child per parent, share 1, child id == parent id.
    static GroupMapping identity(const std::vector<std::string> &parent_ids);

    /// Fills in any missing shares from the basket's baseline expenditures.
    void resolve_shares(const Basket &basket);
};

/// Own-PE of each child after splitting a parent into n_children subgroups:
/// parent_own * (1 + n_children * s). Splitting into a single child is no
/// split at all, so the parent value passes through unchanged.
double child_own_pe(double parent_own, std::size_t n_children, double s);

/// Within-group m-by-m block (row-major). Diagonal holds the child own-PEs;
/// off-diagonal entry (i, j) is share_j / (1 - share_i) * (|own_i| - |parent|),
/// which makes every row sum to the parent own-PE.
std::vector<double> within_group_cross_pes(const std::vector<double> &child_owns,
                                           double parent_own,
                                           const std::vector<double> &shares);

/// Cross-group m_a-by-m_b block: entry (a, b) = parent_cross * share_b,
/// constant down each column, so every row sums to the parent cross-PE.
std::vector<double> cross_group_block(double parent_cross, const std::vector<double> &shares_b,
                                      std::size_t m_a);

/// Expands a parent-level matrix to child level. Children are ordered by
/// parent (in the parent matrix's order) then by mapping order. Every child
/// row's sum over a parent group's columns equals the parent-level entry.
PEMatrix expand_matrix(const PEMatrix &parent, const GroupMapping &mapping, double s);

/// One row of the adding-up audit: the within-block row sum for a child row
/// against a column group, versus the parent entry it must reproduce.
struct AddingUpRow {
    std::string child_id;
    std::string row_parent_id;
    std::string col_parent_id;
    double block_sum = 0.0;
    double parent_value = 0.0;
    double abs_error = 0.0;
};

struct AddingUpAudit {
    std::vector<AddingUpRow> rows;
    double max_abs_error = 0.0;
};

/// Recomputes all block row sums of `child` against `parent` directly.
AddingUpAudit audit_adding_up(const PEMatrix &parent, const GroupMapping &mapping,
                              const PEMatrix &child);

} // namespace foodsim
