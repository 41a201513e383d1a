#include "l1reg/param_choice.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "l1reg/errors.hpp"

namespace l1reg {

namespace {

constexpr int kMaxWidenings = 3;
constexpr double kWidenFactor = 100.0;

/// Smallest alpha for which x = 0 minimizes the functional.
double zero_solution_alpha(const TikhonovProblem& prob) {
    if (prob.p == 2.0 && prob.q == 2.0) return lq_norm(apply_adjoint(prob.op, prob.y_delta), kInfinity);
    // separable embedding, p = q: x_k = 0 iff |y_k|^{p-1} <= alpha
    return std::pow(lq_norm(prob.y_delta, kInfinity), prob.p - 1.0);
}

std::string format_trace(const std::vector<DiscrepancyStep>& trace, double delta, const DiscrepancyConfig& cfg) {
    std::ostringstream os;
    os.precision(6);
    os << "discrepancy principle failed for delta=" << delta << " target [" << cfg.tau1 * delta << ", "
       << cfg.tau2 * delta << "]; trace:";
    for (const auto& s : trace) os << " (alpha=" << s.alpha << ", residual=" << s.residual << ")";
    return os.str();
}

} // namespace

void validate(const DiscrepancyConfig& cfg) {
    if (!(cfg.tau1 > 1.0) || !(cfg.tau2 >= cfg.tau1) || !std::isfinite(cfg.tau2))
        throw InvalidParameter("discrepancy principle needs 1 < tau1 <= tau2 < inf");
    if (!(cfg.alpha_min > 0.0)) throw InvalidParameter("alpha_min must be positive");
    if (cfg.alpha_max != 0.0 && !(cfg.alpha_max > cfg.alpha_min))
        throw InvalidParameter("alpha_max must exceed alpha_min (or be 0 for automatic)");
    if (cfg.max_bisections < 1) throw InvalidParameter("max_bisections must be positive");
}

DiscrepancySelection discrepancy_select(const TikhonovProblem& prob, double delta, const DiscrepancyConfig& cfg) {
    validate(cfg);
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidParameter("noise level delta must be positive");

    TikhonovProblem work = prob;
    work.alpha = 1.0;
    validate(work);

    const double low_target = cfg.tau1 * delta;
    const double high_target = cfg.tau2 * delta;
    double hi = cfg.alpha_max > 0.0 ? cfg.alpha_max : 2.0 * zero_solution_alpha(work);
    if (!(hi > cfg.alpha_min)) hi = 2.0 * cfg.alpha_min;

    if (lq_norm(work.y_delta, work.q) <= high_target) {
        work.alpha = hi;
        const auto zero = TruncatedSequence::zeros(work.size());
        const double res = residual_norm(work, zero);
        return {hi, SolverResult{zero, objective(work, zero), res, 0, true}, DiscrepancyOutcome::Degenerate,
                {{hi, res}}};
    }

    std::vector<DiscrepancyStep> trace;
    std::optional<TruncatedSequence> last;
    auto solve_at = [&](double alpha) {
        work.alpha = alpha;
        FistaOptions opts = cfg.solver_options;
        if (!opts.warm_start && last) opts.warm_start = last;
        auto result = solve(work, opts);
        last = result.x;
        trace.push_back({alpha, result.residual_norm});
        return result;
    };
    auto inside = [&](const SolverResult& r) {
        return r.residual_norm >= low_target && r.residual_norm <= high_target;
    };
    auto accept = [&](double alpha, SolverResult r) {
        return DiscrepancySelection{alpha, std::move(r), DiscrepancyOutcome::Accepted, trace};
    };

    auto upper = solve_at(hi);
    for (int widen = 0; upper.residual_norm < low_target; ++widen) {
        if (widen == kMaxWidenings) throw NoConvergence(format_trace(trace, delta, cfg));
        hi *= kWidenFactor;
        upper = solve_at(hi);
    }
    if (inside(upper)) return accept(hi, std::move(upper));

    double lo = cfg.alpha_min;
    auto lower = solve_at(lo);
    for (int widen = 0; lower.residual_norm > high_target; ++widen) {
        if (widen == kMaxWidenings) throw NoConvergence(format_trace(trace, delta, cfg));
        lo /= kWidenFactor;
        lower = solve_at(lo);
    }
    if (inside(lower)) return accept(lo, std::move(lower));

    for (std::size_t step = 0; step < cfg.max_bisections; ++step) {
        const double mid = std::pow(10.0, 0.5 * (std::log10(lo) + std::log10(hi)));
        auto r = solve_at(mid);
        if (inside(r)) return accept(mid, std::move(r));
        if (r.residual_norm < low_target)
            lo = mid;
        else
            hi = mid;
    }
    throw NoConvergence(format_trace(trace, delta, cfg));
}

double a_priori_alpha(double delta, double p, double c) {
    if (!(delta > 0.0) || !(c > 0.0)) throw InvalidParameter("a-priori rule needs delta > 0 and c > 0");
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidParameter("a-priori rule needs p in (1, inf)");
    return c * std::pow(delta, p - 1.0);
}

} // namespace l1reg
