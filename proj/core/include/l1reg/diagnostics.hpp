#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "l1reg/operators.hpp"

namespace l1reg {

inline constexpr std::size_t kMaxDenseSection = 500;

struct IllposednessReport {
    std::vector<std::pair<std::size_t, double>> column_norms;
    std::vector<std::pair<std::size_t, double>> sigma_min_by_section;
    std::string notes;
};

/// column_norm(op, k) for k = 1..k_max.
std::vector<std::pair<std::size_t, double>> column_norm_profile(const OperatorSpec& op, std::size_t k_max);

/// Smallest singular value of the N x N section for each requested N (N <= 500).
std::vector<std::pair<std::size_t, double>> sigma_min_profile(const OperatorSpec& op,
                                                              std::span<const std::size_t> sections);

/// Both profiles plus a descriptive note. Never claims a type I / type II classification.
IllposednessReport illposedness_report(const OperatorSpec& op, std::size_t k_max,
                                       std::span<const std::size_t> sections);

} // namespace l1reg
