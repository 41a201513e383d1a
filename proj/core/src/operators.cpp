#include "l1reg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/trigamma.hpp>

#include "l1reg/detail/overloaded.hpp"
#include "l1reg/errors.hpp"

namespace l1reg {

using detail::overloaded;

namespace {

void require_section(const OperatorSpec& op, const TruncatedSequence& x) {
    if (x.size() != op.size())
        throw DimensionMismatch("operator section " + std::to_string(op.size()) + " applied to sequence of length " +
                                std::to_string(x.size()));
}

void require_index(const OperatorSpec& op, std::size_t k) {
    if (k < 1 || k > op.size())
        throw IndexError("index " + std::to_string(k) + " outside section 1.." + std::to_string(op.size()));
}

/// Coefficients of sum_k a_k f^(k), entries 1..n stored 0-based.
std::vector<double> combination_coefficients(const OperatorSpec& op, std::span<const int> a) {
    const std::size_t n = a.size();
    std::vector<double> g(n, 0.0);
    std::visit(overloaded{
                   [&](const Cesaro&) {
                       // n a_n e^(n) + sum_{k<n} k (a_k - a_{k+1}) e^(k)
                       for (std::size_t k = 1; k < n; ++k)
                           g[k - 1] = static_cast<double>(k) * static_cast<double>(a[k - 1] - a[k]);
                       g[n - 1] = static_cast<double>(n) * a[n - 1];
                   },
                   [&](const Diagonal& d) {
                       for (std::size_t k = 1; k <= n; ++k) g[k - 1] = a[k - 1] / d.sigma(k);
                   },
                   [&](const Embedding&) {
                       for (std::size_t k = 0; k < n; ++k) g[k] = a[k];
                   },
               },
               op.kind());
    return g;
}

double dual_norm(const OperatorSpec& op, std::span<const double> g) {
    const double r = op.dual_norm_index();
    double peak = 0.0;
    for (double e : g) peak = std::max(peak, std::abs(e));
    if (peak == 0.0 || std::isinf(r)) return peak;
    double s = 0.0;
    if (r == 1.0) {
        for (double e : g) s += std::abs(e);
        return s;
    }
    if (r == 2.0) {
        for (double e : g) s += e * e;
        return std::sqrt(s);
    }
    for (double e : g) s += std::pow(std::abs(e) / peak, r);
    return peak * std::pow(s, 1.0 / r);
}

} // namespace

double Diagonal::sigma(std::size_t k) const {
    if (k < 1) throw IndexError("singular value index is 1-based");
    if (zeta) return std::pow(static_cast<double>(k), -*zeta);
    if (k > sigmas.size())
        throw IndexError("singular value " + std::to_string(k) + " beyond the " + std::to_string(sigmas.size()) +
                         " supplied");
    return sigmas[k - 1];
}

OperatorSpec::OperatorSpec(OperatorKind kind, std::size_t n) : kind_(std::move(kind)), n_(n) {
    if (n_ < 1) throw InvalidParameter("operator section size must be >= 1");
}

OperatorSpec OperatorSpec::cesaro(std::size_t n) { return OperatorSpec(Cesaro{}, n); }

OperatorSpec OperatorSpec::diagonal_power(double zeta, std::size_t n) {
    if (!(zeta > 0.0) || !std::isfinite(zeta)) throw InvalidParameter("diagonal decay exponent zeta must be > 0");
    return OperatorSpec(Diagonal{zeta, {}}, n);
}

OperatorSpec OperatorSpec::diagonal(std::vector<double> sigmas, std::optional<std::size_t> n) {
    if (sigmas.empty()) throw InvalidParameter("diagonal operator needs at least one singular value");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > 0.0) || !std::isfinite(sigmas[i]))
            throw InvalidParameter("diagonal singular values must be positive and finite");
        if (i > 0 && !(sigmas[i] < sigmas[i - 1]))
            throw InvalidParameter("diagonal singular values must be strictly decreasing");
    }
    const std::size_t size = n.value_or(sigmas.size());
    if (size > sigmas.size()) throw InvalidParameter("section larger than the supplied singular values");
    return OperatorSpec(Diagonal{std::nullopt, std::move(sigmas)}, size);
}

OperatorSpec OperatorSpec::embedding(double q, std::size_t n) {
    if (!(q >= 1.0)) throw InvalidParameter("embedding norm index q must lie in [1, inf]");
    return OperatorSpec(Embedding{q}, n);
}

double OperatorSpec::image_norm_index() const {
    if (const auto* e = std::get_if<Embedding>(&kind_)) return e->q;
    return 2.0;
}

double conjugate_exponent(double q) {
    if (!(q >= 1.0)) throw InvalidParameter("norm index must lie in [1, inf]");
    if (q == 1.0) return kInfinity;
    if (std::isinf(q)) return 1.0;
    return q / (q - 1.0);
}

double OperatorSpec::dual_norm_index() const { return conjugate_exponent(image_norm_index()); }

OperatorSpec OperatorSpec::with_size(std::size_t n) const {
    if (const auto* d = std::get_if<Diagonal>(&kind_); d && !d->zeta && n > d->sigmas.size())
        throw InvalidParameter("section larger than the supplied singular values");
    return OperatorSpec(kind_, n);
}

std::string OperatorSpec::name() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Cesaro&) { os << "cesaro"; },
                   [&](const Diagonal& d) {
                       if (d.zeta)
                           os << "diagonal:" << *d.zeta;
                       else
                           os << "diagonal[explicit]";
                   },
                   [&](const Embedding& e) {
                       os << "embedding:";
                       if (std::isinf(e.q))
                           os << "inf";
                       else
                           os << e.q;
                   },
               },
               kind_);
    return os.str();
}

TruncatedSequence apply(const OperatorSpec& op, const TruncatedSequence& x) {
    require_section(op, x);
    const std::size_t n = x.size();
    std::vector<double> out(n);
    std::visit(overloaded{
                   [&](const Cesaro&) {
                       double running = 0.0;
                       for (std::size_t k = 1; k <= n; ++k) {
                           running += x(k);
                           out[k - 1] = running / static_cast<double>(k);
                       }
                   },
                   [&](const Diagonal& d) {
                       for (std::size_t k = 1; k <= n; ++k) out[k - 1] = d.sigma(k) * x(k);
                   },
                   [&](const Embedding&) { out.assign(x.values().begin(), x.values().end()); },
               },
               op.kind());
    return TruncatedSequence(std::move(out));
}

TruncatedSequence apply_adjoint(const OperatorSpec& op, const TruncatedSequence& w) {
    require_section(op, w);
    const std::size_t n = w.size();
    std::vector<double> out(n);
    std::visit(overloaded{
                   [&](const Cesaro&) {
                       // [A*w]_k = sum_{m=k}^N w_m / m
                       double running = 0.0;
                       for (std::size_t k = n; k >= 1; --k) {
                           running += w(k) / static_cast<double>(k);
                           out[k - 1] = running;
                       }
                   },
                   [&](const Diagonal& d) {
                       for (std::size_t k = 1; k <= n; ++k) out[k - 1] = d.sigma(k) * w(k);
                   },
                   [&](const Embedding&) { out.assign(w.values().begin(), w.values().end()); },
               },
               op.kind());
    return TruncatedSequence(std::move(out));
}

SourceElement source_element(const OperatorSpec& op, std::size_t k) {
    require_index(op, k);
    SourceElement f{k, {}};
    std::visit(overloaded{
                   [&](const Cesaro&) {
                       f.coeffs[k] = static_cast<double>(k);
                       if (k >= 2) f.coeffs[k - 1] = -static_cast<double>(k - 1);
                   },
                   [&](const Diagonal& d) { f.coeffs[k] = 1.0 / d.sigma(k); },
                   [&](const Embedding&) { f.coeffs[k] = 1.0; },
               },
               op.kind());
    return f;
}

bool verify_link_condition(const OperatorSpec& op, const SourceElement& f, double tol) {
    require_index(op, f.k);
    std::vector<double> w(op.size(), 0.0);
    for (const auto& [index, value] : f.coeffs) {
        require_index(op, index);
        w[index - 1] = value;
    }
    const auto image = apply_adjoint(op, TruncatedSequence(std::move(w)));
    double worst = 0.0;
    for (std::size_t m = 1; m <= op.size(); ++m) {
        const double target = (m == f.k) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(image(m) - target));
    }
    return worst <= tol;
}

bool verify_link_condition(const OperatorSpec& op, std::size_t k, double tol) {
    return verify_link_condition(op, source_element(op, k), tol);
}

double column_norm(const OperatorSpec& op, std::size_t k) {
    if (k < 1) throw IndexError("column index is 1-based");
    return std::visit(overloaded{
                          // sum_{n>=k} 1/n^2 is the trigamma function at k
                          [&](const Cesaro&) { return std::sqrt(boost::math::trigamma(static_cast<double>(k))); },
                          [&](const Diagonal& d) { return d.sigma(k); },
                          [&](const Embedding&) { return 1.0; },
                      },
                      op.kind());
}

double dual_combination_norm(const OperatorSpec& op, std::span<const int> signs) {
    if (signs.empty() || signs.size() > op.size())
        throw DimensionMismatch("sign vector length " + std::to_string(signs.size()) + " not in 1.." +
                                std::to_string(op.size()));
    for (int a : signs)
        if (a < -1 || a > 1) throw InvalidParameter("sign vector entries must lie in {-1, 0, 1}");
    const auto g = combination_coefficients(op, signs);
    return dual_norm(op, g);
}

double source_norm(const OperatorSpec& op, std::size_t k) {
    if (k < 1) throw IndexError("source element index is 1-based");
    return std::visit(overloaded{
                          [k](const Cesaro&) {
                              const double dk = static_cast<double>(k);
                              return std::hypot(dk - 1.0, dk);
                          },
                          [k](const Diagonal& d) { return 1.0 / d.sigma(k); },
                          [](const Embedding&) { return 1.0; },
                      },
                      op.kind());
}

double source_norm_cumulative(const OperatorSpec& op, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) s += source_norm(op, k);
    return s;
}

} // namespace l1reg
