#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <variant>
#include <vector>

namespace l1reg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/**
 * Finite section x_1..x_N of a real sequence.
 *
 * Element access through operator() is 1-based; the underlying storage and
 * operator[] are 0-based. All entries are finite and N >= 1.
 */
class TruncatedSequence {
public:
    explicit TruncatedSequence(std::vector<double> values);

    static TruncatedSequence zeros(std::size_t n);
    /// Unit sequence e^(k) of length n.
    static TruncatedSequence unit(std::size_t n, std::size_t k);

    std::size_t size() const noexcept { return values_.size(); }

    double operator()(std::size_t k) const { return values_[k - 1]; }
    double operator[](std::size_t i) const { return values_[i]; }

    std::span<const double> values() const noexcept { return values_; }

    TruncatedSequence& operator+=(const TruncatedSequence& other);
    TruncatedSequence& operator-=(const TruncatedSequence& other);
    TruncatedSequence& operator*=(double s);

    friend bool operator==(const TruncatedSequence&, const TruncatedSequence&) = default;

private:
    std::vector<double> values_;
};

TruncatedSequence operator+(TruncatedSequence a, const TruncatedSequence& b);
TruncatedSequence operator-(TruncatedSequence a, const TruncatedSequence& b);
TruncatedSequence operator*(double s, TruncatedSequence a);

/// Euclidean inner product; sizes must agree.
double dot(const TruncatedSequence& a, const TruncatedSequence& b);

/// (sum |x_k|^q)^(1/q), or max |x_k| for q = infinity. Throws for q < 1.
double lq_norm(const TruncatedSequence& x, double q);

/// sum_{k=n+1}^N |x_k|. Throws IndexError for n > N.
double tail_sum(const TruncatedSequence& x, std::size_t n);

/// Number of entries with |x_k| > zero_tol.
std::size_t l0_count(const TruncatedSequence& x, double zero_tol = 0.0);

// Solution models. Generated entries are nonnegative for the tail models.

/// x_k = C k^{-(mu+1)}, tail bound (C/mu) n^{-mu}.
struct HolderTail {
    double mu;
    double C;
};

/// x_k = C exp(-k^gamma), tail bound C/(e^gamma - 1) exp(-n^gamma). Requires gamma >= 1.
struct ExponentialTail {
    double gamma;
    double C;
};

/// Finitely supported x; keys are 1-based indices.
struct Sparse {
    std::map<std::size_t, double> support;
};

using SolutionModel = std::variant<HolderTail, ExponentialTail, Sparse>;

/// Throws InvalidParameter when the model's parameters are out of range.
void validate(const SolutionModel& model);

/// Closed-form upper bound on sum_{k>n} |x_k| for the infinite sequence.
double analytic_tail(const SolutionModel& model, std::size_t n);

/// Constant K1 with sum_{k>n}|x_k| <= K1 exp(-n^gamma) for all n >= 1.
double exponential_tail_constant(const ExponentialTail& model);

/// First N entries of the model's sequence. Sparse entries beyond N are dropped.
TruncatedSequence generate_solution(const SolutionModel& model, std::size_t n);

} // namespace l1reg
