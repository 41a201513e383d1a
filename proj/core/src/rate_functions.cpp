#include "l1reg/rate_functions.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "l1reg/detail/overloaded.hpp"
#include "l1reg/errors.hpp"

namespace l1reg {

using detail::overloaded;

RateModel::RateModel(std::vector<double> tail, std::vector<double> growth, GrowthKind kind)
    : tail_(std::move(tail)), growth_(std::move(growth)), kind_(kind) {
    if (tail_.empty() || tail_.size() != growth_.size())
        throw InvalidParameter("rate model tables must be nonempty and of equal length");
    for (std::size_t i = 0; i < tail_.size(); ++i) {
        if (!(tail_[i] >= 0.0) || !(growth_[i] >= 0.0) || !std::isfinite(tail_[i]) || !std::isfinite(growth_[i]))
            throw InvalidParameter("rate model entries must be finite and nonnegative");
        if (i > 0 && tail_[i] > tail_[i - 1]) throw InvalidParameter("rate model tail must be nonincreasing");
        if (i > 0 && growth_[i] < growth_[i - 1]) throw InvalidParameter("rate model growth must be nondecreasing");
    }
}

RateModel RateModel::tabulate(const IndexFunction& tail, const IndexFunction& growth, std::size_t n_max,
                              GrowthKind kind) {
    if (n_max < 1) throw InvalidParameter("rate model needs n_max >= 1");
    std::vector<double> t(n_max), g(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        t[n - 1] = tail(n);
        g[n - 1] = growth(n);
    }
    return RateModel(std::move(t), std::move(g), kind);
}

IndexFunction section_tail(const TruncatedSequence& x) {
    // suffix sums; each step adds a nonnegative term so the table is monotone in floating point too
    auto table = std::make_shared<std::vector<double>>(x.size() + 1, 0.0);
    for (std::size_t k = x.size(); k >= 1; --k) (*table)[k - 1] = (*table)[k] + std::abs(x(k));
    return [table](std::size_t n) { return n < table->size() ? (*table)[n] : 0.0; };
}

IndexFunction model_tail(const SolutionModel& model) {
    validate(model);
    return [model](std::size_t n) { return analytic_tail(model, n); };
}

RateModel phi1_model(const OperatorSpec& op, const IndexFunction& tail, std::size_t n_max) {
    std::vector<double> t(n_max), g(n_max);
    double cumulative = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        t[n - 1] = tail(n);
        cumulative += source_norm(op, n);
        g[n - 1] = cumulative;
    }
    return RateModel(std::move(t), std::move(g), GrowthKind::CumulativeNorm);
}

RateModel phi2_model(const OperatorSpec& op, const IndexFunction& tail, std::size_t n_max) {
    return RateModel::tabulate(tail, [&op](std::size_t n) { return sup_closed_form(op, n); }, n_max,
                               GrowthKind::SignSupremum);
}

IndexValue evaluate_index_function(double t, const RateModel& model) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("index function argument must be >= 0");
    if (t == 0.0) return {2.0 * model.tail(model.n_max()), model.n_max()};
    IndexValue best{kInfinity, 0};
    for (std::size_t n = 1; n <= model.n_max(); ++n) {
        const double v = model.tail(n) + t * model.growth(n);
        if (v < best.value) best = {v, n};
    }
    best.value *= 2.0;
    return best;
}

IndexValue phi1(double t, const RateModel& model) {
    if (model.kind() != GrowthKind::CumulativeNorm) throw InvalidParameter("phi1 needs a cumulative-norm model");
    return evaluate_index_function(t, model);
}

IndexValue phi2(double t, const RateModel& model) {
    if (model.kind() != GrowthKind::SignSupremum) throw InvalidParameter("phi2 needs a sign-supremum model");
    return evaluate_index_function(t, model);
}

double cesaro_sup_closed_form(std::size_t n) {
    if (n < 1) throw InvalidParameter("closed form needs n >= 1");
    const double dn = static_cast<double>(n);
    // n^2 + 4 sum_{k<n} k^2
    return std::sqrt((4.0 * dn * dn * dn - 3.0 * dn * dn + 2.0 * dn) / 3.0);
}

double embedding_sup_closed_form(std::size_t n, double q) {
    if (n < 1) throw InvalidParameter("closed form needs n >= 1");
    if (!(q >= 1.0)) throw InvalidParameter("embedding norm index q must lie in [1, inf]");
    const double dn = static_cast<double>(n);
    if (std::isinf(q)) return dn;
    if (q == 1.0) return 1.0;
    if (q == 2.0) return std::sqrt(dn);
    return std::pow(dn, 1.0 - 1.0 / q);
}

double diagonal_sup_closed_form(std::size_t n, const Diagonal& diag) {
    if (n < 1) throw InvalidParameter("closed form needs n >= 1");
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double inv = 1.0 / diag.sigma(k);
        s += inv * inv;
    }
    return std::sqrt(s);
}

double sup_closed_form(const OperatorSpec& op, std::size_t n) {
    return std::visit(overloaded{
                          [n](const Cesaro&) { return cesaro_sup_closed_form(n); },
                          [n](const Diagonal& d) { return diagonal_sup_closed_form(n, d); },
                          [n](const Embedding& e) { return embedding_sup_closed_form(n, e.q); },
                      },
                      op.kind());
}

SupremumResult sup_bruteforce(const OperatorSpec& op, std::size_t n) {
    if (n < 1 || n > kMaxBruteForceN)
        throw InvalidParameter("sign enumeration supports 1 <= n <= " + std::to_string(kMaxBruteForceN));
    if (n > op.size()) throw DimensionMismatch("n exceeds the operator section");

    // odometer over {-1, 0, 1}^n starting at all -1
    std::vector<int> signs(n, -1);
    SupremumResult best{-1.0, signs};
    while (true) {
        const double v = dual_combination_norm(op, signs);
        if (v > best.value) best = {v, signs};
        std::size_t i = 0;
        while (i < n && signs[i] == 1) signs[i++] = -1;
        if (i == n) break;
        ++signs[i];
    }
    return best;
}

double holder_exponent(double mu, double nu) {
    if (!(mu > 0.0) || !(nu > 0.0)) throw InvalidParameter("Holder exponent needs mu > 0 and nu > 0");
    return mu / (mu + nu);
}

double sup_growth_exponent(const OperatorSpec& op) {
    return std::visit(overloaded{
                          [](const Cesaro&) { return 1.5; },
                          [](const Diagonal& d) {
                              // sqrt(sum k^{2 zeta}) ~ n^{zeta + 1/2}; the cruder bound sum 1/sigma_k gives zeta + 1
                              if (!d.zeta) throw InvalidParameter("growth exponent needs a power-law diagonal");
                              return *d.zeta + 0.5;
                          },
                          [](const Embedding& e) { return std::isinf(e.q) ? 1.0 : 1.0 - 1.0 / e.q; },
                      },
                      op.kind());
}

double RatePrediction::shape(double delta) const {
    if (!(delta > 0.0)) throw InvalidParameter("noise level must be positive");
    if (kind == Kind::Holder) return std::pow(delta, exponent);
    return delta * std::pow(std::log(1.0 / delta), nu / gamma);
}

RatePrediction predict_holder(double mu, double nu) {
    RatePrediction p{RatePrediction::Kind::Holder};
    p.mu = mu;
    p.nu = nu;
    p.exponent = holder_exponent(mu, nu);
    return p;
}

RatePrediction predict_exponential(double gamma, double nu) {
    if (!(gamma > 0.0) || !(nu > 0.0)) throw InvalidParameter("exponential rate needs gamma > 0 and nu > 0");
    RatePrediction p{RatePrediction::Kind::Exponential};
    p.gamma = gamma;
    p.nu = nu;
    p.exponent = 1.0;
    return p;
}

namespace {

void require_matching(const OperatorSpec& op, const TruncatedSequence& x, const TruncatedSequence& x_dag) {
    if (x.size() != op.size() || x_dag.size() != op.size())
        throw DimensionMismatch("x, x_dag and the operator section must have equal size");
}

} // namespace

double verify_variational_inequality(const OperatorSpec& op, const TruncatedSequence& x,
                                     const TruncatedSequence& x_dag, const RateModel& phi) {
    require_matching(op, x, x_dag);
    const double lhs = lq_norm(x - x_dag, 1.0);
    const double misfit = lq_norm(apply(op, x) - apply(op, x_dag), op.image_norm_index());
    const double rhs = lq_norm(x, 1.0) - lq_norm(x_dag, 1.0) + evaluate_index_function(misfit, phi).value;
    return rhs - lhs;
}

ProofChain verify_proof_chain(const OperatorSpec& op, const TruncatedSequence& x, const TruncatedSequence& x_dag,
                              std::size_t n) {
    require_matching(op, x, x_dag);
    if (n < 1 || n > op.size()) throw IndexError("proof-chain n outside the section");
    const auto diff = x - x_dag;
    const double tail = tail_sum(x_dag, n);
    double head = 0.0;
    for (std::size_t k = 1; k <= n; ++k) head += std::abs(diff(k));
    const double misfit = lq_norm(apply(op, diff), op.image_norm_index());
    return {
        lq_norm(diff, 1.0) - lq_norm(x, 1.0) + lq_norm(x_dag, 1.0),
        2.0 * (tail + head),
        2.0 * (tail + misfit * sup_closed_form(op, n)),
    };
}

} // namespace l1reg
