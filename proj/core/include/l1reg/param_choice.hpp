#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "l1reg/solver.hpp"

namespace l1reg {

struct DiscrepancyConfig {
    double tau1 = 1.1;
    double tau2 = 1.5;
    double alpha_min = 1e-12;
    double alpha_max = 0.0; ///< 0 selects 2 ||A* y_delta||_inf
    std::size_t max_bisections = 60;
    FistaOptions solver_options{};
};

void validate(const DiscrepancyConfig& cfg);

enum class DiscrepancyOutcome {
    Accepted,   ///< residual in [tau1 delta, tau2 delta]
    Degenerate, ///< ||y_delta|| <= tau2 delta, x = 0 returned with alpha_max
};

struct DiscrepancyStep {
    double alpha;
    double residual;
};

struct DiscrepancySelection {
    double alpha;
    SolverResult result;
    DiscrepancyOutcome outcome;
    std::vector<DiscrepancyStep> trace;
};

/// Selects alpha by bisection on log10(alpha) until tau1 delta <= ||A x_alpha - y_delta|| <= tau2 delta.
/// The alpha in `prob` is ignored. Throws NoConvergence (message carries the trace) on failure.
DiscrepancySelection discrepancy_select(const TikhonovProblem& prob, double delta, const DiscrepancyConfig& cfg = {});

/// alpha = c delta^{p-1}, so that alpha -> 0 and delta^p / alpha = delta / c -> 0.
double a_priori_alpha(double delta, double p, double c);

} // namespace l1reg
