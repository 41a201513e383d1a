#include "l1reg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "l1reg/detail/overloaded.hpp"
#include "l1reg/errors.hpp"
#include "l1reg/solver.hpp"

namespace l1reg {

using detail::overloaded;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTruncationGuardFactor = 10.0;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform in [-1, 1) from the top 53 bits.
double symmetric_uniform(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-52 - 1.0;
}

/// Uniform in [0, 1).
double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

bool solver_available(const OperatorSpec& op, double p, double q) {
    if (p == 2.0 && q == 2.0) return true;
    return std::holds_alternative<Embedding>(op.kind()) && p == q && q > 1.0 && std::isfinite(q);
}

} // namespace

std::vector<double> DeltaGrid::values() const {
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = delta0 * std::pow(ratio, static_cast<double>(j));
    return out;
}

void validate(const Scenario& sc) {
    try {
        validate(sc.solution);
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    if (sc.q != sc.op.image_norm_index())
        throw ConfigError("q must equal the operator's image norm index (" + sc.op.name() + ")");
    if (!(sc.p > 1.0) || !std::isfinite(sc.p)) throw ConfigError("p must lie in (1, inf)");
    if (!solver_available(sc.op, sc.p, sc.q))
        throw ConfigError("no solver for this (operator, p, q): use p = q = 2, or an embedding with p = q in (1, inf)");
    const auto& g = sc.delta_grid;
    if (!(g.delta0 > 0.0) || !std::isfinite(g.delta0)) throw ConfigError("delta0 must be positive");
    if (!(g.ratio > 0.0 && g.ratio < 1.0)) throw ConfigError("delta ratio must lie in (0, 1) for a decreasing grid");
    if (g.count < 1) throw ConfigError("delta grid needs at least one point");
    if (const auto* d = std::get_if<DiscrepancyRule>(&sc.rule); d && !(d->tau1 > 1.0 && d->tau2 >= d->tau1))
        throw ConfigError("discrepancy rule needs 1 < tau1 <= tau2");
    if (const auto* a = std::get_if<APrioriRule>(&sc.rule); a && !(a->c > 0.0))
        throw ConfigError("a-priori rule needs c > 0");
    if (!(sc.c_budget > 0.0)) throw ConfigError("c_budget must be positive");

    const double smallest = g.values().back();
    const double tail = analytic_tail(sc.solution, sc.op.size());
    if (smallest < kTruncationGuardFactor * tail)
        throw ConfigError("truncation guard: smallest delta " + std::to_string(smallest) +
                          " is below 10 x analytic tail at N (" + std::to_string(tail) +
                          "); increase N or the smallest delta");
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) + counter);
}

TruncatedSequence generate_noise(const TruncatedSequence& y, double delta, double q, std::uint64_t seed,
                                 NoiseMode mode, std::uint64_t stream) {
    if (!(delta > 0.0)) throw InvalidParameter("noise level must be positive");
    const std::size_t n = y.size();
    std::vector<double> u(n);
    for (std::size_t k = 1; k <= n; ++k) {
        if (mode == NoiseMode::Alternating)
            u[k - 1] = (k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(k);
        else
            u[k - 1] = symmetric_uniform(counter_hash(seed, stream, k));
    }
    TruncatedSequence direction(std::move(u));
    const double norm = lq_norm(direction, q);
    if (norm == 0.0) direction = TruncatedSequence::unit(n, 1);
    direction *= delta / (norm == 0.0 ? 1.0 : norm);
    return y + direction;
}

std::string to_string(RecordStatus status) {
    switch (status) {
    case RecordStatus::Ok: return "ok";
    case RecordStatus::Degenerate: return "degenerate";
    case RecordStatus::Unconverged: return "unconverged";
    case RecordStatus::Failed: return "failed";
    }
    return "unknown";
}

RateModel scenario_phi2_model(const Scenario& sc) {
    return phi2_model(sc.op, model_tail(sc.solution), sc.op.size());
}

RateModel scenario_phi1_model(const Scenario& sc) {
    return phi1_model(sc.op, model_tail(sc.solution), sc.op.size());
}

std::vector<RateRunRecord> run_rate_experiment(const Scenario& sc) {
    validate(sc);
    const auto x_dag = generate_solution(sc.solution, sc.op.size());
    const auto y = apply(sc.op, x_dag);
    const auto phi = scenario_phi2_model(sc);
    const auto deltas = sc.delta_grid.values();

    std::vector<RateRunRecord> records;
    records.reserve(deltas.size());
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        RateRunRecord rec;
        rec.delta = deltas[j];
        rec.phi2_at_delta = phi2(rec.delta, phi).value;
        try {
            TikhonovProblem prob{sc.op, generate_noise(y, rec.delta, sc.q, sc.noise.seed, sc.noise.mode, j), sc.p,
                                 sc.q, 1.0};
            SolverResult result = std::visit(
                overloaded{
                    [&](const DiscrepancyRule& rule) {
                        DiscrepancyConfig cfg;
                        cfg.tau1 = rule.tau1;
                        cfg.tau2 = rule.tau2;
                        auto sel = discrepancy_select(prob, rec.delta, cfg);
                        rec.alpha = sel.alpha;
                        if (sel.outcome == DiscrepancyOutcome::Degenerate) rec.status = RecordStatus::Degenerate;
                        return std::move(sel.result);
                    },
                    [&](const APrioriRule& rule) {
                        prob.alpha = a_priori_alpha(rec.delta, sc.p, rule.c);
                        rec.alpha = prob.alpha;
                        return solve(prob);
                    },
                },
                sc.rule);
            rec.error_l1 = lq_norm(result.x - x_dag, 1.0);
            rec.residual = result.residual_norm;
            rec.iterations = result.iterations;
            if (!result.converged && rec.status == RecordStatus::Ok) rec.status = RecordStatus::Unconverged;
        } catch (const std::exception& e) {
            rec.alpha = rec.error_l1 = rec.residual = kNaN;
            rec.iterations = 0;
            rec.status = RecordStatus::Failed;
            rec.message = e.what();
        }
        records.push_back(std::move(rec));
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const RateRunRecord& a, const RateRunRecord& b) { return a.delta > b.delta; });
    return records;
}

RateFit fit_rate_exponent(std::span<const double> deltas, std::span<const double> errors) {
    if (deltas.size() != errors.size()) throw DimensionMismatch("deltas and errors differ in length");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (deltas[i] > 0.0 && errors[i] > 0.0 && std::isfinite(deltas[i]) && std::isfinite(errors[i])) {
            lx.push_back(std::log(deltas[i]));
            ly.push_back(std::log(errors[i]));
        }
    }
    if (lx.size() < 4) throw InvalidParameter("rate fit needs at least 4 records with positive delta and error");

    const double m = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw InvalidParameter("rate fit needs at least two distinct noise levels");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    const double ss_res = std::max(0.0, syy - slope * sxy);
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return {slope, intercept, r2};
}

RateFit fit_rate_exponent(const std::vector<RateRunRecord>& records) {
    std::vector<double> deltas, errors;
    for (const auto& r : records) {
        if (r.status == RecordStatus::Failed) continue;
        deltas.push_back(r.delta);
        errors.push_back(r.error_l1);
    }
    return fit_rate_exponent(deltas, errors);
}

EnvelopeCheck phi_envelope_check(const std::vector<RateRunRecord>& records, double c_budget) {
    if (records.empty()) throw InvalidParameter("envelope check needs at least one record");
    double c_fit = 0.0;
    bool any = false;
    for (const auto& r : records) {
        if (r.status == RecordStatus::Failed) continue;
        any = true;
        if (r.phi2_at_delta <= 0.0) {
            if (r.error_l1 > 0.0)
                throw ContractViolation("phi2(delta) = 0 but error " + std::to_string(r.error_l1) + " at delta " +
                                        std::to_string(r.delta));
            continue;
        }
        c_fit = std::max(c_fit, r.error_l1 / r.phi2_at_delta);
    }
    if (!any) throw InvalidParameter("envelope check needs at least one non-failed record");
    return {c_fit, c_fit <= c_budget};
}

std::vector<SlackSample> variational_slack_samples(const Scenario& sc, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = sc.op.size();
    const auto x_dag = generate_solution(sc.solution, n);
    const auto tail = section_tail(x_dag);
    const auto model2 = phi2_model(sc.op, tail, n);
    const auto model1 = phi1_model(sc.op, tail, n);

    std::vector<SlackSample> out;
    out.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        std::uint64_t counter = 0;
        auto next = [&] { return counter_hash(seed, s, counter++); };
        const double scale = std::pow(10.0, -4.0 + 5.0 * unit_uniform(next()));
        std::vector<double> x(x_dag.values().begin(), x_dag.values().end());
        switch (s % 3) {
        case 0: // dense perturbation of x_dag
            for (double& e : x) e += scale * symmetric_uniform(next());
            break;
        case 1: { // sparse perturbation of x_dag
            const std::size_t touched = 1 + next() % std::min<std::size_t>(10, n);
            for (std::size_t i = 0; i < touched; ++i) x[next() % n] += scale * symmetric_uniform(next());
            break;
        }
        default: // unrelated random point
            for (double& e : x) e = scale * symmetric_uniform(next());
            break;
        }
        const TruncatedSequence point(std::move(x));
        out.push_back({verify_variational_inequality(sc.op, point, x_dag, model2),
                       verify_variational_inequality(sc.op, point, x_dag, model1)});
    }
    return out;
}

} // namespace l1reg
