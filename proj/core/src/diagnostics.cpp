#include "l1reg/diagnostics.hpp"

#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "l1reg/errors.hpp"

namespace l1reg {

namespace {

Eigen::MatrixXd section_matrix(const OperatorSpec& op) {
    const auto n = static_cast<Eigen::Index>(op.size());
    Eigen::MatrixXd m(n, n);
    // columns are A e^(k)
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto column = apply(op, TruncatedSequence::unit(op.size(), static_cast<std::size_t>(k) + 1));
        for (Eigen::Index i = 0; i < n; ++i) m(i, k) = column[static_cast<std::size_t>(i)];
    }
    return m;
}

} // namespace

std::vector<std::pair<std::size_t, double>> column_norm_profile(const OperatorSpec& op, std::size_t k_max) {
    if (k_max < 1) throw InvalidParameter("k_max must be >= 1");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) out.emplace_back(k, column_norm(op, k));
    return out;
}

std::vector<std::pair<std::size_t, double>> sigma_min_profile(const OperatorSpec& op,
                                                              std::span<const std::size_t> sections) {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(sections.size());
    for (std::size_t n : sections) {
        if (n < 1 || n > kMaxDenseSection)
            throw InvalidParameter("dense section size must lie in 1.." + std::to_string(kMaxDenseSection));
        const auto section = op.with_size(n);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(section_matrix(section));
        out.emplace_back(n, svd.singularValues().minCoeff());
    }
    return out;
}

IllposednessReport illposedness_report(const OperatorSpec& op, std::size_t k_max,
                                       std::span<const std::size_t> sections) {
    if (sections.empty()) throw InvalidParameter("at least one section size is required");
    IllposednessReport report{column_norm_profile(op, k_max), sigma_min_profile(op, sections), {}};

    const auto& cols = report.column_norms;
    const auto& sig = report.sigma_min_by_section;
    std::ostringstream notes;
    notes.precision(6);
    notes << op.name() << ": ";
    if (cols.size() > 1 && cols.back().second < cols.front().second)
        notes << "column norms decay from " << cols.front().second << " to " << cols.back().second << "; ";
    else
        notes << "column norms do not decay (" << cols.front().second << ") on k <= " << k_max << "; ";

    bool decreasing = sig.size() > 1;
    for (std::size_t i = 1; i < sig.size(); ++i) decreasing = decreasing && sig[i].second < sig[i - 1].second;
    if (decreasing)
        notes << "smallest section singular value falls to " << sig.back().second << " at N=" << sig.back().first
              << ", consistent with nonclosed range";
    else
        notes << "smallest section singular value shows no decay over the computed sections";
    report.notes = notes.str();
    return report;
}

} // namespace l1reg
