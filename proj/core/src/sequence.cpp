#include "l1reg/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "l1reg/detail/overloaded.hpp"
#include "l1reg/errors.hpp"

namespace l1reg {

namespace {

using detail::overloaded;

void require_same_size(const TruncatedSequence& a, const TruncatedSequence& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("sequence sizes differ: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
}

} // namespace

TruncatedSequence::TruncatedSequence(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidParameter("truncated sequence needs N >= 1");
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidParameter("truncated sequence entries must be finite");
}

TruncatedSequence TruncatedSequence::zeros(std::size_t n) {
    return TruncatedSequence(std::vector<double>(n, 0.0));
}

TruncatedSequence TruncatedSequence::unit(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) throw IndexError("unit index " + std::to_string(k) + " outside 1.." + std::to_string(n));
    std::vector<double> v(n, 0.0);
    v[k - 1] = 1.0;
    return TruncatedSequence(std::move(v));
}

TruncatedSequence& TruncatedSequence::operator+=(const TruncatedSequence& other) {
    require_same_size(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

TruncatedSequence& TruncatedSequence::operator-=(const TruncatedSequence& other) {
    require_same_size(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

TruncatedSequence& TruncatedSequence::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

TruncatedSequence operator+(TruncatedSequence a, const TruncatedSequence& b) { return a += b; }
TruncatedSequence operator-(TruncatedSequence a, const TruncatedSequence& b) { return a -= b; }
TruncatedSequence operator*(double s, TruncatedSequence a) { return a *= s; }

double dot(const TruncatedSequence& a, const TruncatedSequence& b) {
    require_same_size(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double lq_norm(const TruncatedSequence& x, double q) {
    if (!(q >= 1.0)) throw InvalidParameter("lq_norm requires q >= 1");
    const auto v = x.values();
    double peak = 0.0;
    for (double e : v) peak = std::max(peak, std::abs(e));
    if (std::isinf(q) || peak == 0.0) return peak;
    if (q == 1.0) {
        double s = 0.0;
        for (double e : v) s += std::abs(e);
        return s;
    }
    // scaled to avoid overflow/underflow in |x|^q
    double s = 0.0;
    if (q == 2.0) {
        for (double e : v) {
            const double r = e / peak;
            s += r * r;
        }
        return peak * std::sqrt(s);
    }
    for (double e : v) s += std::pow(std::abs(e) / peak, q);
    return peak * std::pow(s, 1.0 / q);
}

double tail_sum(const TruncatedSequence& x, std::size_t n) {
    if (n > x.size())
        throw IndexError("tail index " + std::to_string(n) + " beyond section size " + std::to_string(x.size()));
    // smallest-magnitude terms of decaying sequences sit at the end
    double s = 0.0;
    for (std::size_t k = x.size(); k > n; --k) s += std::abs(x(k));
    return s;
}

std::size_t l0_count(const TruncatedSequence& x, double zero_tol) {
    if (zero_tol < 0.0) throw InvalidParameter("zero tolerance must be nonnegative");
    return static_cast<std::size_t>(
        std::count_if(x.values().begin(), x.values().end(), [zero_tol](double e) { return std::abs(e) > zero_tol; }));
}

void validate(const SolutionModel& model) {
    std::visit(overloaded{
                   [](const HolderTail& m) {
                       if (!(m.mu > 0.0) || !(m.C > 0.0) || !std::isfinite(m.mu) || !std::isfinite(m.C))
                           throw InvalidParameter("HolderTail needs mu > 0 and C > 0");
                   },
                   [](const ExponentialTail& m) {
                       // for gamma < 1 the tail decays like n^{1-gamma} exp(-n^gamma): no constant K1 exists
                       if (!(m.gamma >= 1.0) || !(m.C > 0.0) || !std::isfinite(m.gamma) || !std::isfinite(m.C))
                           throw InvalidParameter("ExponentialTail needs gamma >= 1 and C > 0");
                   },
                   [](const Sparse& m) {
                       for (const auto& [k, v] : m.support) {
                           if (k < 1) throw InvalidParameter("sparse support indices are 1-based");
                           if (!std::isfinite(v)) throw InvalidParameter("sparse values must be finite");
                       }
                   },
               },
               model);
}

double exponential_tail_constant(const ExponentialTail& model) {
    // (n+j)^g >= n^g + g j for g >= 1, n >= 1, so the tail is dominated by a geometric series
    return model.C / std::expm1(model.gamma);
}

double analytic_tail(const SolutionModel& model, std::size_t n) {
    validate(model);
    if (n < 1) throw InvalidParameter("analytic tail is defined for n >= 1");
    const double dn = static_cast<double>(n);
    return std::visit(overloaded{
                          [dn](const HolderTail& m) { return m.C / m.mu * std::pow(dn, -m.mu); },
                          [dn](const ExponentialTail& m) {
                              return exponential_tail_constant(m) * std::exp(-std::pow(dn, m.gamma));
                          },
                          [n](const Sparse& m) {
                              double s = 0.0;
                              for (auto it = m.support.upper_bound(n); it != m.support.end(); ++it)
                                  s += std::abs(it->second);
                              return s;
                          },
                      },
                      model);
}

TruncatedSequence generate_solution(const SolutionModel& model, std::size_t n) {
    validate(model);
    if (n < 1) throw InvalidParameter("generate_solution needs N >= 1");
    std::vector<double> v(n, 0.0);
    std::visit(overloaded{
                   [&v](const HolderTail& m) {
                       for (std::size_t k = 1; k <= v.size(); ++k)
                           v[k - 1] = m.C * std::pow(static_cast<double>(k), -(m.mu + 1.0));
                   },
                   [&v](const ExponentialTail& m) {
                       for (std::size_t k = 1; k <= v.size(); ++k)
                           v[k - 1] = m.C * std::exp(-std::pow(static_cast<double>(k), m.gamma));
                   },
                   [&v](const Sparse& m) {
                       for (const auto& [k, value] : m.support)
                           if (k <= v.size()) v[k - 1] = value;
                   },
               },
               model);
    return TruncatedSequence(std::move(v));
}

} // namespace l1reg
