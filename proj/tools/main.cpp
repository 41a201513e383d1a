#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "l1reg/diagnostics.hpp"
#include "l1reg/errors.hpp"
#include "l1reg/scenario_io.hpp"

using namespace l1reg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

double theory_exponent(const Scenario& sc) {
    const double nu = sup_growth_exponent(sc.op);
    if (const auto* h = std::get_if<HolderTail>(&sc.solution)) return holder_exponent(h->mu, nu);
    return 1.0; // exponential and sparse tails: delta up to logarithmic factors
}

int run_rates(const std::string& path, const std::string& out_path) {
    const auto sc = load_scenario(path);
    const auto records = run_rate_experiment(sc);

    if (out_path.empty()) {
        write_records_csv(std::cout, records);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + out_path + "'");
        write_records_csv(out, records);
    }

    std::size_t failed = 0;
    for (const auto& r : records) failed += r.status == RecordStatus::Failed;
    fmt::print(std::cerr, "scenario {}: {} records, {} failed\n", sc.name, records.size(), failed);
    bool ok = failed == 0;
    try {
        const auto fit = fit_rate_exponent(records);
        fmt::print(std::cerr, "slope {:.4f}  r2 {:.4f}  theory exponent {:.4f}\n", fit.slope, fit.r2,
                   theory_exponent(sc));
    } catch (const InvalidParameter& e) {
        fmt::print(std::cerr, "slope not fitted: {}\n", e.what());
    }
    try {
        const auto env = phi_envelope_check(records, sc.c_budget);
        fmt::print(std::cerr, "C_fit {:.4f} (budget {}) {}\n", env.c_fit, sc.c_budget, env.pass ? "pass" : "FAIL");
        ok = ok && env.pass;
    } catch (const ContractViolation& e) {
        fmt::print(std::cerr, "envelope: {}\n", e.what());
        ok = false;
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int run_diagnose(const std::string& op_text, std::size_t kmax, const std::vector<std::size_t>& sections,
                 std::size_t n) {
    const auto op = parse_operator(op_text, n);
    const auto report = illposedness_report(op, kmax, sections);
    std::cout << "kind,index,value\n";
    for (const auto& [k, v] : report.column_norms) std::cout << "column_norm," << k << ',' << format_real(v) << '\n';
    for (const auto& [m, v] : report.sigma_min_by_section)
        std::cout << "sigma_min," << m << ',' << format_real(v) << '\n';
    std::cerr << report.notes << '\n';
    return kExitOk;
}

int run_vi_check(const std::string& path, std::size_t samples, std::uint64_t seed) {
    const auto sc = load_scenario(path);
    constexpr double kSlackTolerance = 1e-9;
    const auto slacks = variational_slack_samples(sc, samples, seed);
    std::cout << "sample,phi2_slack,phi1_slack\n";
    double worst = kInfinity;
    for (std::size_t i = 0; i < slacks.size(); ++i) {
        std::cout << i << ',' << format_real(slacks[i].phi2_slack) << ',' << format_real(slacks[i].phi1_slack) << '\n';
        worst = std::min(worst, slacks[i].phi2_slack);
    }
    const bool ok = worst >= -kSlackTolerance;
    fmt::print(std::cerr, "{} samples, min phi2 slack {:.3e} {}\n", slacks.size(), worst, ok ? "ok" : "VIOLATED");
    return ok ? kExitOk : kExitCheckFailed;
}

int run_phi(const std::string& op_text, const std::string& solution_text, std::size_t n, double tmin, double tmax,
            std::size_t points) {
    if (!(tmin > 0.0 && tmax > tmin) || points < 2) throw ConfigError("need 0 < tmin < tmax and points >= 2");
    const auto op = parse_operator(op_text, n);
    const auto tail = model_tail(parse_solution(solution_text));
    const auto m1 = phi1_model(op, tail, n);
    const auto m2 = phi2_model(op, tail, n);
    std::cout << "t,phi1,phi1_argmin,phi2,phi2_argmin\n";
    for (std::size_t i = 0; i < points; ++i) {
        const double t = tmin * std::pow(tmax / tmin, static_cast<double>(i) / static_cast<double>(points - 1));
        const auto a = phi1(t, m1);
        const auto b = phi2(t, m2);
        std::cout << format_real(t) << ',' << format_real(a.value) << ',' << a.argmin << ',' << format_real(b.value)
                  << ',' << b.argmin << '\n';
    }
    return kExitOk;
}

int run_sup_oracle(const std::string& op_text, std::size_t n_max) {
    if (n_max < 1 || n_max > kMaxBruteForceN)
        throw ConfigError(fmt::format("--n must lie in [1, {}]", kMaxBruteForceN));
    const auto op = parse_operator(op_text, n_max);
    constexpr double kRelTol = 1e-12;
    bool ok = true;
    std::cout << "n,bruteforce,closed_form,rel_diff,argmax\n";
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto bf = sup_bruteforce(op, n);
        const double cf = sup_closed_form(op, n);
        const double rel = std::abs(bf.value - cf) / std::max(cf, 1e-300);
        ok = ok && rel <= kRelTol;
        std::string signs;
        for (int a : bf.argmax) signs += a > 0 ? '+' : (a < 0 ? '-' : '0');
        std::cout << n << ',' << format_real(bf.value) << ',' << format_real(cf) << ',' << format_real(rel) << ','
                  << signs << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"l1-regularization rate experiments"};
    app.require_subcommand(1);

    std::string scenario, out_path, op_text, solution_text = "holder:mu=1,C=1";
    std::size_t kmax = 50, n = 500, samples = 1000, points = 200, n_sup = 10;
    std::uint64_t seed = 1;
    std::vector<std::size_t> sections{50, 100, 200, 400};
    double tmin = 1e-10, tmax = 1e2;

    auto* rates = app.add_subcommand("rates", "run a rate experiment, emit records CSV");
    rates->add_option("scenario", scenario, "scenario file")->required();
    rates->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* diagnose = app.add_subcommand("diagnose", "column norms and section singular values");
    diagnose->add_option("operator", op_text, "cesaro | diagonal:<zeta> | embedding:<q>")->required();
    diagnose->add_option("--kmax", kmax, "largest column index")->check(CLI::PositiveNumber);
    diagnose->add_option("--sections", sections, "section sizes")->delimiter(',');
    diagnose->add_option("--N", n, "section size for the operator descriptor")->check(CLI::PositiveNumber);

    auto* vi = app.add_subcommand("vi-check", "variational inequality slack at random points");
    vi->add_option("scenario", scenario, "scenario file")->required();
    vi->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
    vi->add_option("--seed", seed, "sampling seed");

    auto* phi = app.add_subcommand("phi", "tabulate phi1 and phi2 on a log-spaced t grid");
    phi->add_option("operator", op_text, "operator descriptor")->required();
    phi->add_option("--solution", solution_text, "holder:mu=..,C=.. | exponential:gamma=..,C=.. | sparse:k=v,..");
    phi->add_option("--N", n, "largest n in the infimum")->check(CLI::PositiveNumber);
    phi->add_option("--tmin", tmin);
    phi->add_option("--tmax", tmax);
    phi->add_option("--points", points);

    auto* sup = app.add_subcommand("sup-oracle", "brute-force sign supremum against the closed form");
    sup->add_option("operator", op_text, "operator descriptor")->required();
    sup->add_option("--n", n_sup, "largest n to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*rates) return run_rates(scenario, out_path);
        if (*diagnose) return run_diagnose(op_text, kmax, sections, n);
        if (*vi) return run_vi_check(scenario, samples, seed);
        if (*phi) return run_phi(op_text, solution_text, n, tmin, tmax, points);
        if (*sup) return run_sup_oracle(op_text, n_sup);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}
