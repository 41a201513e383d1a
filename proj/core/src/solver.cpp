#include "l1reg/solver.hpp"

#include <algorithm>
#include <cmath>

#include "l1reg/errors.hpp"

namespace l1reg {

namespace {

constexpr double kLipschitzSafety = 1.01;

double soft(double v, double threshold) {
    if (v > threshold) return v - threshold;
    if (v < -threshold) return v + threshold;
    return 0.0;
}

std::vector<double> soft(std::span<const double> v, double threshold) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = soft(v[i], threshold);
    return out;
}

double l1(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += std::abs(e);
    return s;
}

double half_squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return 0.5 * s;
}

SolverResult make_result(const TikhonovProblem& prob, TruncatedSequence x, std::size_t iterations, bool converged) {
    const double res = residual_norm(prob, x);
    const double obj = std::pow(res, prob.p) / prob.p + prob.alpha * lq_norm(x, 1.0);
    return {std::move(x), obj, res, iterations, converged};
}

} // namespace

void validate(const TikhonovProblem& prob) {
    if (!(prob.alpha > 0.0) || !std::isfinite(prob.alpha)) throw InvalidParameter("alpha must be positive and finite");
    if (!(prob.p > 1.0) || !std::isfinite(prob.p)) throw InvalidParameter("misfit exponent p must lie in (1, inf)");
    if (prob.q != prob.op.image_norm_index())
        throw InvalidParameter("misfit norm q must match the operator's image norm");
    if (prob.y_delta.size() != prob.op.size()) throw DimensionMismatch("data length differs from operator section");
}

double residual_norm(const TikhonovProblem& prob, const TruncatedSequence& x) {
    return lq_norm(apply(prob.op, x) - prob.y_delta, prob.q);
}

double objective(const TikhonovProblem& prob, const TruncatedSequence& x) {
    validate(prob);
    return std::pow(residual_norm(prob, x), prob.p) / prob.p + prob.alpha * lq_norm(x, 1.0);
}

double generalized_soft_threshold(double y, double alpha, double p) {
    if (!(alpha > 0.0) || !(p > 1.0)) throw InvalidParameter("threshold needs alpha > 0 and p > 1");
    // stationarity |y - s|^{p-1} = alpha on the side of y; zero when |y|^{p-1} <= alpha
    const double threshold = std::pow(alpha, 1.0 / (p - 1.0));
    if (std::abs(y) <= threshold) return 0.0;
    return y > 0.0 ? y - threshold : y + threshold;
}

SolverResult solve_separable(const TikhonovProblem& prob) {
    validate(prob);
    if (!std::holds_alternative<Embedding>(prob.op.kind()))
        throw InvalidParameter("separable solver needs the embedding operator");
    if (prob.p != prob.q || std::isinf(prob.q) || !(prob.q > 1.0))
        throw InvalidParameter("separable solver needs p = q in (1, inf)");
    std::vector<double> x(prob.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = generalized_soft_threshold(prob.y_delta[i], prob.alpha, prob.p);
    return make_result(prob, TruncatedSequence(std::move(x)), 1, true);
}

double lipschitz_estimate(const OperatorSpec& op) {
    if (std::holds_alternative<Embedding>(op.kind())) return 1.0;
    if (const auto* d = std::get_if<Diagonal>(&op.kind())) {
        double peak = 0.0;
        for (std::size_t k = 1; k <= op.size(); ++k) peak = std::max(peak, d->sigma(k));
        return peak * peak;
    }

    constexpr std::size_t kMinIterations = 50;
    constexpr std::size_t kMaxIterations = 20000;
    constexpr double kTolerance = 1e-10;

    const double start = 1.0 / std::sqrt(static_cast<double>(op.size()));
    TruncatedSequence v(std::vector<double>(op.size(), start));
    double lambda = 0.0;
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
        auto w = apply_adjoint(op, apply(op, v));
        const double next = lq_norm(w, 2.0);
        if (next == 0.0) return 0.0;
        w *= 1.0 / next;
        v = std::move(w);
        const bool settled = std::abs(next - lambda) <= kTolerance * next;
        lambda = next;
        if (it + 1 >= kMinIterations && settled) break;
    }
    return kLipschitzSafety * lambda;
}

SolverResult solve_fista(const TikhonovProblem& prob, const FistaOptions& options) {
    validate(prob);
    if (prob.p != 2.0 || prob.q != 2.0) throw InvalidParameter("FISTA solver supports p = q = 2 only");
    if (!(options.tol > 0.0)) throw InvalidParameter("tolerance must be positive");

    const OperatorSpec& op = prob.op;
    const std::size_t n = prob.size();
    const std::size_t max_iter = options.max_iter.value_or(50 * n);
    const auto y = prob.y_delta.values();
    const double alpha = prob.alpha;

    if (options.warm_start && options.warm_start->size() != n)
        throw DimensionMismatch("warm start length differs from operator section");
    TruncatedSequence x = options.warm_start.value_or(TruncatedSequence::zeros(n));

    double lipschitz = lipschitz_estimate(op);
    if (lipschitz == 0.0) return make_result(prob, TruncatedSequence::zeros(n), 0, true);

    auto residual_of = [&](const TruncatedSequence& image) {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = image[i] - y[i];
        return TruncatedSequence(std::move(r));
    };
    auto value_of = [&](const TruncatedSequence& image, const TruncatedSequence& point) {
        return half_squared_distance(image.values(), y) + alpha * l1(point.values());
    };
    // F(u) - F(v) without subtracting two nearly equal totals, with d = u - v:
    // <A d, A v - y> + 1/2 |A d|^2 + alpha (|u|_1 - |v|_1)
    auto increase = [&](const TruncatedSequence& u, const TruncatedSequence& v, const TruncatedSequence& image_v) {
        const auto image_d = apply(op, u - v);
        double misfit = 0.0, penalty = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            misfit += image_d[i] * (image_v[i] - y[i] + 0.5 * image_d[i]);
            penalty += std::abs(u[i]) - std::abs(v[i]);
        }
        return misfit + alpha * penalty;
    };
    // L * ||u - prox(u - grad/L)||_inf
    auto stationarity = [&](const TruncatedSequence& u, const TruncatedSequence& grad) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double moved = soft(u[i] - grad[i] / lipschitz, alpha / lipschitz);
            worst = std::max(worst, std::abs(u[i] - moved));
        }
        return lipschitz * worst;
    };

    TruncatedSequence image_x = apply(op, x);
    TruncatedSequence grad_x = apply_adjoint(op, residual_of(image_x));
    if (stationarity(x, grad_x) <= options.tol) return make_result(prob, std::move(x), 0, true);

    TruncatedSequence z = x;
    TruncatedSequence image_z = image_x;
    double t = 1.0;
    bool momentum = false;
    bool converged = false;
    std::size_t it = 0;

    while (it < max_iter) {
        ++it;
        const auto grad_z = momentum ? apply_adjoint(op, residual_of(image_z)) : grad_x;
        std::vector<double> step(n);
        for (std::size_t i = 0; i < n; ++i) step[i] = z[i] - grad_z[i] / lipschitz;
        TruncatedSequence u(soft(step, alpha / lipschitz));
        TruncatedSequence image_u = apply(op, u);
        const double rise = increase(u, x, image_x);

        if (rise > 0.0) {
            if (momentum) {
                // objective went up: drop the momentum and retry from x
                z = x;
                image_z = image_x;
                t = 1.0;
                momentum = false;
                continue;
            }
            if (rise > 1e-15 * std::max(1e-300, value_of(image_x, x))) {
                lipschitz *= 2.0; // the estimate was too small
                continue;
            }
            // plain step from x cannot improve beyond rounding
            converged = stationarity(x, grad_x) <= options.tol;
            break;
        }

        TruncatedSequence grad_u = apply_adjoint(op, residual_of(image_u));
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double beta = (t - 1.0) / t_next;
        std::vector<double> z_next(n), image_z_next(n);
        for (std::size_t i = 0; i < n; ++i) {
            z_next[i] = u[i] + beta * (u[i] - x[i]);
            image_z_next[i] = image_u[i] + beta * (image_u[i] - image_x[i]);
        }
        z = TruncatedSequence(std::move(z_next));
        image_z = TruncatedSequence(std::move(image_z_next));
        x = std::move(u);
        image_x = std::move(image_u);
        grad_x = std::move(grad_u);
        t = t_next;
        momentum = true;

        if (stationarity(x, grad_x) <= options.tol) {
            converged = true;
            break;
        }
    }
    return make_result(prob, std::move(x), it, converged);
}

SolverResult solve(const TikhonovProblem& prob, const FistaOptions& options) {
    validate(prob);
    const bool separable = std::holds_alternative<Embedding>(prob.op.kind()) && prob.p == prob.q &&
                           prob.q > 1.0 && std::isfinite(prob.q);
    return separable ? solve_separable(prob) : solve_fista(prob, options);
}

} // namespace l1reg
