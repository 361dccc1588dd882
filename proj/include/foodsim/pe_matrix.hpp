#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace foodsim {

/// Square Marshallian price-elasticity matrix. Entry (i, j) is the % change
/// in quantity of food i per 1% change in the price of food j. Diagonal
/// entries are own-price elasticities and are expected to be <= 0.
struct PEMatrix {
    std::vector<std::string> food_ids;
    std::vector<double> values; // row-major, food_ids.size()^2
    std::vector<double> sd;     // empty, or same shape as values

    std::size_t size() const { return food_ids.size(); }
    bool has_sd() const { return !sd.empty(); }

    double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
    double &at(std::size_t i, std::size_t j) { return values[i * size() + j]; }
    double sd_at(std::size_t i, std::size_t j) const { return sd[i * size() + j]; }

    static PEMatrix zeros(std::vector<std::string> ids);
};

struct PeValidationIssue {
    enum class Severity { error, warning };
    Severity severity;
    std::string message;
};

struct PeValidationReport {
    std::vector<PeValidationIssue> issues;

    bool ok() const;         // no errors (warnings allowed)
    std::size_t error_count() const;
    std::string to_string() const;
};

/// Structural checks: shape, positive diagonals, non-finite entries, and a
/// |e| > 5 magnitude warning. Never throws; the caller decides severity.
PeValidationReport validate_pe_matrix(const PEMatrix &pem);

} // namespace foodsim
