#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "l1reg/operators.hpp"
#include "l1reg/param_choice.hpp"
#include "l1reg/rate_functions.hpp"
#include "l1reg/sequence.hpp"

namespace l1reg {

enum class NoiseMode {
    RandomDirection, ///< counter-based uniform entries in [-1, 1), normalized
    Alternating,     ///< u_k proportional to (-1)^k / k
};

struct NoiseSpec {
    std::uint64_t seed = 0;
    NoiseMode mode = NoiseMode::RandomDirection;
};

/// delta_j = delta0 * ratio^j, j = 0..count-1.
struct DeltaGrid {
    double delta0 = 0.1;
    double ratio = 0.25;
    std::size_t count = 6;

    std::vector<double> values() const;
};

struct DiscrepancyRule {
    double tau1 = 1.1;
    double tau2 = 1.5;
};

struct APrioriRule {
    double c = 1.0;
};

using ParamRule = std::variant<DiscrepancyRule, APrioriRule>;

struct Scenario {
    std::string name;
    OperatorSpec op;
    SolutionModel solution;
    double p = 2.0;
    double q = 2.0;
    DeltaGrid delta_grid{};
    NoiseSpec noise{};
    ParamRule rule = DiscrepancyRule{};
    double c_budget = 4.0;
};

/// Throws ConfigError for inconsistent scenarios, including the truncation guard
/// smallest delta >= 10 * analytic_tail(solution, N).
void validate(const Scenario& sc);

/// 64-bit counter-based generator: the value depends only on (seed, stream, counter).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// y + delta u / ||u||_q; `stream` separates grid points sharing a seed.
TruncatedSequence generate_noise(const TruncatedSequence& y, double delta, double q, std::uint64_t seed,
                                 NoiseMode mode, std::uint64_t stream = 0);

enum class RecordStatus {
    Ok,
    Degenerate,  ///< discrepancy principle took the x = 0 branch
    Unconverged, ///< solver hit its iteration cap; the record is still usable
    Failed,      ///< parameter choice or solver threw; numeric fields are NaN
};

std::string to_string(RecordStatus status);

struct RateRunRecord {
    double delta = 0.0;
    double alpha = 0.0;
    double error_l1 = 0.0;
    double residual = 0.0;
    std::size_t iterations = 0;
    double phi2_at_delta = 0.0;
    RecordStatus status = RecordStatus::Ok;
    std::string message;
};

/// One record per grid point, ordered by delta descending. Failures are recorded, not thrown.
std::vector<RateRunRecord> run_rate_experiment(const Scenario& sc);

/// phi2 built from the model's analytic tail and the closed-form sign supremum, n <= N.
RateModel scenario_phi2_model(const Scenario& sc);
RateModel scenario_phi1_model(const Scenario& sc);

struct RateFit {
    double slope;
    double intercept;
    double r2;
};

/// Least-squares fit of log(error) against log(delta) over non-failed records with positive values.
RateFit fit_rate_exponent(const std::vector<RateRunRecord>& records);
RateFit fit_rate_exponent(std::span<const double> deltas, std::span<const double> errors);

struct EnvelopeCheck {
    double c_fit;
    bool pass;
};

/// c_fit = max error_l1 / phi2_at_delta; pass iff c_fit <= c_budget.
EnvelopeCheck phi_envelope_check(const std::vector<RateRunRecord>& records, double c_budget = 4.0);

struct SlackSample {
    double phi2_slack;
    double phi1_slack;
};

/// Variational-inequality slack at random points around the scenario's exact solution.
std::vector<SlackSample> variational_slack_samples(const Scenario& sc, std::size_t samples, std::uint64_t seed);

} // namespace l1reg
