#pragma once

#include <cstddef>
#include <optional>

#include "l1reg/operators.hpp"
#include "l1reg/sequence.hpp"

namespace l1reg {

/// (1/p) ||A x - y_delta||_q^p + alpha ||x||_1 on the operator's section.
struct TikhonovProblem {
    OperatorSpec op;
    TruncatedSequence y_delta;
    double p = 2.0;
    double q = 2.0;
    double alpha = 1.0;

    std::size_t size() const noexcept { return op.size(); }
};

/// Throws when alpha <= 0, p outside (1, inf), q differs from the operator's image norm,
/// or the data length differs from the section.
void validate(const TikhonovProblem& prob);

struct SolverResult {
    TruncatedSequence x;
    double objective = 0.0;
    double residual_norm = 0.0; ///< ||A x - y_delta||_q
    std::size_t iterations = 0;
    bool converged = false;
};

double objective(const TikhonovProblem& prob, const TruncatedSequence& x);

/// ||A x - y_delta||_q.
double residual_norm(const TikhonovProblem& prob, const TruncatedSequence& x);

/// Exact minimizer for the embedding operator with p = q in (1, inf):
/// x_k = sgn(y_k) max(|y_k| - alpha^{1/(p-1)}, 0), ties at the threshold set to zero.
SolverResult solve_separable(const TikhonovProblem& prob);

/// Scalar minimizer of (1/p)|s - y|^p + alpha |s|.
double generalized_soft_threshold(double y, double alpha, double p);

struct FistaOptions {
    double tol = 1e-10;                 ///< on ||x - prox(x - grad/L)||_inf * L
    std::optional<std::size_t> max_iter; ///< defaults to 50 N
    std::optional<TruncatedSequence> warm_start;
};

/// Accelerated proximal gradient with objective-increase restart for p = q = 2.
SolverResult solve_fista(const TikhonovProblem& prob, const FistaOptions& options = {});

/// Upper bound on ||A||^2 for the section (power iteration on A*A for Cesaro).
double lipschitz_estimate(const OperatorSpec& op);

/// solve_separable for embeddings with p = q, solve_fista otherwise.
SolverResult solve(const TikhonovProblem& prob, const FistaOptions& options = {});

} // namespace l1reg
