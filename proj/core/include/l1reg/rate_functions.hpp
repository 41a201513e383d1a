#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "l1reg/operators.hpp"
#include "l1reg/sequence.hpp"

namespace l1reg {

/// Which dual growth the model carries.
enum class GrowthKind {
    CumulativeNorm, ///< sum_{k<=n} ||f^(k)||, feeds phi1
    SignSupremum,   ///< sup over a in {-1,0,1}^n of ||sum a_k f^(k)||, feeds phi2
};

using IndexFunction = std::function<double(std::size_t)>;

/**
 * Tabulated ingredients of an index function on n = 1..n_max:
 *
 *   phi(t) = 2 min_n ( tail(n) + t * growth(n) ).
 *
 * The tail must be nonnegative and nonincreasing, the growth nonnegative and
 * nondecreasing; the constructor rejects tables that violate this.
 */
class RateModel {
public:
    RateModel(std::vector<double> tail, std::vector<double> growth, GrowthKind kind);

    static RateModel tabulate(const IndexFunction& tail, const IndexFunction& growth, std::size_t n_max,
                              GrowthKind kind);

    std::size_t n_max() const noexcept { return tail_.size(); }
    double tail(std::size_t n) const { return tail_.at(n - 1); }
    double growth(std::size_t n) const { return growth_.at(n - 1); }
    GrowthKind kind() const noexcept { return kind_; }

private:
    std::vector<double> tail_;
    std::vector<double> growth_;
    GrowthKind kind_;
};

/// Tail n -> sum_{k>n} |x_k| of a finite section, exact.
IndexFunction section_tail(const TruncatedSequence& x);
/// Tail n -> analytic bound of the model.
IndexFunction model_tail(const SolutionModel& model);

RateModel phi1_model(const OperatorSpec& op, const IndexFunction& tail, std::size_t n_max);
RateModel phi2_model(const OperatorSpec& op, const IndexFunction& tail, std::size_t n_max);

struct IndexValue {
    double value;
    std::size_t argmin; ///< minimizing n (smallest on ties)
};

/// phi(t) for whichever growth the model carries; t = 0 yields the limit 2 tail(n_max).
IndexValue evaluate_index_function(double t, const RateModel& model);
/// As evaluate_index_function but requires a cumulative-norm model.
IndexValue phi1(double t, const RateModel& model);
/// As evaluate_index_function but requires a sign-supremum model.
IndexValue phi2(double t, const RateModel& model);

double cesaro_sup_closed_form(std::size_t n);
double embedding_sup_closed_form(std::size_t n, double q);
double diagonal_sup_closed_form(std::size_t n, const Diagonal& diag);
/// Closed-form sign supremum S(n) for the operator's family.
double sup_closed_form(const OperatorSpec& op, std::size_t n);

struct SupremumResult {
    double value;
    std::vector<int> argmax;
};

inline constexpr std::size_t kMaxBruteForceN = 16;

/// Exact maximum of dual_combination_norm over all 3^n sign vectors (n <= 16).
SupremumResult sup_bruteforce(const OperatorSpec& op, std::size_t n);

/// mu / (mu + nu).
double holder_exponent(double mu, double nu);

/// Asymptotic exponent nu of S(n) ~ n^nu for the operator family.
double sup_growth_exponent(const OperatorSpec& op);

struct RatePrediction {
    enum class Kind { Holder, Exponential };
    Kind kind;
    double mu = 0.0;    ///< tail decay exponent (Holder)
    double gamma = 0.0; ///< tail decay exponent (exponential)
    double nu = 0.0;    ///< growth exponent of the dual quantity
    double exponent = 0.0;

    /// Shape of the predicted error as a function of the noise level.
    double shape(double delta) const;
};

RatePrediction predict_holder(double mu, double nu);
RatePrediction predict_exponential(double gamma, double nu);

/// RHS - LHS of ||x - x_dag||_1 <= ||x||_1 - ||x_dag||_1 + phi(||Ax - Ax_dag||).
double verify_variational_inequality(const OperatorSpec& op, const TruncatedSequence& x,
                                     const TruncatedSequence& x_dag, const RateModel& phi);

struct ProofChain {
    double lhs;     ///< ||x - x_dag||_1 - ||x||_1 + ||x_dag||_1
    double bound11; ///< 2 (tail(n) + sum_{k<=n} |x_k - x_dag_k|)
    double bound12; ///< 2 (tail(n) + ||Ax - Ax_dag|| S(n))
};

ProofChain verify_proof_chain(const OperatorSpec& op, const TruncatedSequence& x, const TruncatedSequence& x_dag,
                              std::size_t n);

} // namespace l1reg
