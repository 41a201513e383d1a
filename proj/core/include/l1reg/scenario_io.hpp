#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "l1reg/experiments.hpp"

namespace l1reg {

inline constexpr int kScenarioSchemaVersion = 1;

/**
 * Parses a scenario from `key = value` lines. Blank lines and `#` comments are
 * ignored; unknown or repeated keys are errors. Recognised keys:
 *
 *   schema_version   1 (required)
 *   name             free text
 *   operator         cesaro | diagonal | embedding (required)
 *   zeta             diagonal decay, sigma_k = k^-zeta
 *   q                image norm index, embedding only ("inf" allowed); 2 otherwise
 *   N                section size (required)
 *   p                misfit exponent (default: q for embeddings, else 2)
 *   solution         holder | exponential | sparse (required)
 *   mu, C            holder tail
 *   gamma, C         exponential tail
 *   support          sparse entries "k:value, k:value" (may be empty)
 *   delta0, delta_ratio, delta_count
 *   noise_seed, noise_mode (random_direction | alternating)
 *   param_rule       discrepancy | a_priori
 *   tau1, tau2       discrepancy bounds
 *   apriori_c        constant of alpha = c delta^{p-1}
 *   c_budget         envelope budget for error / phi2(delta)
 *
 * Throws ConfigError; the result has passed validate(Scenario).
 */
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::filesystem::path& path);

/// Operator descriptor used on the command line: "cesaro", "diagonal:<zeta>", "embedding:<q>".
OperatorSpec parse_operator(std::string_view descriptor, std::size_t n);

/// Solution descriptor: "holder:mu=1,C=1", "exponential:gamma=1,C=1", "sparse:1=2.0,4=-1".
SolutionModel parse_solution(std::string_view descriptor);

/// %.17g rendering used for every float in CSV output.
std::string format_real(double v);

inline constexpr std::string_view kRecordsCsvHeader = "delta,alpha,error_l1,residual,iterations,phi2_at_delta,status";

void write_records_csv(std::ostream& os, const std::vector<RateRunRecord>& records);

} // namespace l1reg
