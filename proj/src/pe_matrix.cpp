#include "foodsim/pe_matrix.hpp"

#include <cmath>
#include <sstream>

namespace foodsim {

PEMatrix PEMatrix::zeros(std::vector<std::string> ids) {
    PEMatrix pem;
    pem.food_ids = std::move(ids);
    pem.values.assign(pem.food_ids.size() * pem.food_ids.size(), 0.0);
    return pem;
}

bool PeValidationReport::ok() const { return error_count() == 0; }

std::size_t PeValidationReport::error_count() const {
    std::size_t n = 0;
    for (const auto &issue : issues)
        if (issue.severity == PeValidationIssue::Severity::error)
            ++n;
    return n;
}

std::string PeValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto &issue : issues) {
        out << (issue.severity == PeValidationIssue::Severity::error ? "error: " : "warning: ")
            << issue.message << "\n";
    }
    return out.str();
}

PeValidationReport validate_pe_matrix(const PEMatrix &pem) {
    constexpr double magnitude_warning = 5.0;
    PeValidationReport report;
    const std::size_t n = pem.food_ids.size();

    if (pem.values.size() != n * n) {
        std::ostringstream msg;
        msg << "not square: " << pem.values.size() << " cells for " << n << " food ids";
        report.issues.push_back({PeValidationIssue::Severity::error, msg.str()});
        return report; // indexing below would be meaningless
    }
    if (!pem.sd.empty() && pem.sd.size() != n * n)
        report.issues.push_back({PeValidationIssue::Severity::error,
                                 "sd matrix shape does not match the elasticity matrix"});

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double e = pem.at(i, j);
            if (!std::isfinite(e)) {
                std::ostringstream msg;
                msg << "non-finite entry at (" << pem.food_ids[i] << ", " << pem.food_ids[j] << ")";
                report.issues.push_back({PeValidationIssue::Severity::error, msg.str()});
                continue;
            }
            if (i == j && e > 0.0) {
                std::ostringstream msg;
                msg << "positive own-PE at index " << i << " (" << pem.food_ids[i] << "): " << e;
                report.issues.push_back({PeValidationIssue::Severity::error, msg.str()});
            }
            if (std::fabs(e) > magnitude_warning) {
                std::ostringstream msg;
                msg << "|e| > " << magnitude_warning << " at (" << pem.food_ids[i] << ", "
                    << pem.food_ids[j] << "): " << e;
                report.issues.push_back({PeValidationIssue::Severity::warning, msg.str()});
            }
        }
    }
    return report;
}

} // namespace foodsim
