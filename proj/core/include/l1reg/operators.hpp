#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "l1reg/sequence.hpp"

namespace l1reg {

/// [Ax]_n = (1/n) sum_{k<=n} x_k, image space l^2.
struct Cesaro {};

/// [Ax]_k = sigma_k x_k, image space l^2.
/// Either the power law sigma_k = k^{-zeta} or an explicit strictly decreasing list.
struct Diagonal {
    std::optional<double> zeta;
    std::vector<double> sigmas;

    double sigma(std::size_t k) const;
};

/// Identity on entries, image space l^q with q in [1, inf].
struct Embedding {
    double q;
};

using OperatorKind = std::variant<Cesaro, Diagonal, Embedding>;

/// One of the operator families restricted to its leading N x N section.
class OperatorSpec {
public:
    static OperatorSpec cesaro(std::size_t n);
    static OperatorSpec diagonal_power(double zeta, std::size_t n);
    /// Explicit singular values; the section size defaults to the list length.
    static OperatorSpec diagonal(std::vector<double> sigmas, std::optional<std::size_t> n = std::nullopt);
    static OperatorSpec embedding(double q, std::size_t n);

    const OperatorKind& kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return n_; }

    /// Norm index of the image space Y.
    double image_norm_index() const;
    /// Norm index used for functionals in Y*; 1 when Y = l^inf.
    double dual_norm_index() const;

    /// Same operator family on a different section size.
    OperatorSpec with_size(std::size_t n) const;

    std::string name() const;

private:
    OperatorSpec(OperatorKind kind, std::size_t n);

    OperatorKind kind_;
    std::size_t n_;
};

/// Dual exponent q' with 1/q + 1/q' = 1.
double conjugate_exponent(double q);

/// Representation of f^(k) in Y* with A* f^(k) = e^(k).
struct SourceElement {
    std::size_t k;
    std::map<std::size_t, double> coeffs;
};

TruncatedSequence apply(const OperatorSpec& op, const TruncatedSequence& x);
TruncatedSequence apply_adjoint(const OperatorSpec& op, const TruncatedSequence& w);

SourceElement source_element(const OperatorSpec& op, std::size_t k);

/// True iff ||A* f^(k) - e^(k)||_inf <= tol on the section.
bool verify_link_condition(const OperatorSpec& op, std::size_t k, double tol);
bool verify_link_condition(const OperatorSpec& op, const SourceElement& f, double tol);

/// ||A e^(k)|| in the image norm. The Cesaro value does not depend on the section size.
double column_norm(const OperatorSpec& op, std::size_t k);

/// || sum_{k=1}^n a_k f^(k) ||_{Y*} for a sign vector a in {-1,0,1}^n.
double dual_combination_norm(const OperatorSpec& op, std::span<const int> signs);

/// ||f^(k)||_{Y*}; independent of the section size.
double source_norm(const OperatorSpec& op, std::size_t k);

/// sum_{k=1}^n ||f^(k)||_{Y*}.
double source_norm_cumulative(const OperatorSpec& op, std::size_t n);

} // namespace l1reg
