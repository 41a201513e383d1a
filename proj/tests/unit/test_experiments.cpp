#include "doctest.h"

#include <cmath>

#include "l1reg/errors.hpp"
#include "l1reg/experiments.hpp"
#include "oracles.hpp"

using namespace l1reg;

namespace {

Scenario denoising(SolutionModel model, std::size_t n = 2000) {
    return Scenario{"t", OperatorSpec::embedding(2.0, n), std::move(model), 2.0, 2.0, {0.1, 0.25, 5},
                    {42, NoiseMode::RandomDirection}};
}

} // namespace

TEST_CASE("noise has exact norm") {
    const auto y = TruncatedSequence(oracle::Rng(1).vector(300));
    for (double q : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
        for (auto mode : {NoiseMode::RandomDirection, NoiseMode::Alternating}) {
            for (double delta : {1e-6, 0.3}) {
                const auto yd = generate_noise(y, delta, q, 7, mode);
                CHECK(lq_norm(yd - y, q) == doctest::Approx(delta).epsilon(1e-14));
            }
        }
    }
    CHECK_THROWS_AS(generate_noise(y, 0.0, 2.0, 1, NoiseMode::RandomDirection), InvalidParameter);
}

TEST_CASE("noise is deterministic and keyed by seed and stream") {
    const auto y = TruncatedSequence::zeros(64);
    const auto a = generate_noise(y, 1.0, 2.0, 5, NoiseMode::RandomDirection, 3);
    CHECK(a == generate_noise(y, 1.0, 2.0, 5, NoiseMode::RandomDirection, 3));
    CHECK_FALSE(a == generate_noise(y, 1.0, 2.0, 6, NoiseMode::RandomDirection, 3));
    CHECK_FALSE(a == generate_noise(y, 1.0, 2.0, 5, NoiseMode::RandomDirection, 4));
    CHECK(counter_hash(1, 2, 3) == counter_hash(1, 2, 3));
    CHECK(counter_hash(1, 2, 3) != counter_hash(1, 2, 4));

    // entries roughly uniform on [-1, 1)
    double mean = 0.0;
    const auto big = generate_noise(TruncatedSequence::zeros(20000), 1.0, kInfinity, 9, NoiseMode::RandomDirection);
    for (double v : big.values()) mean += v;
    CHECK(std::abs(mean / 20000) < 0.02);
}

TEST_CASE("alternating noise formula") {
    const auto y = TruncatedSequence({3.0, 4.0});
    const auto yd = generate_noise(y, 1.0, 2.0, 0, NoiseMode::Alternating);
    const double nrm = std::sqrt(1.25);
    CHECK(yd(1) == doctest::Approx(3.0 - 1.0 / nrm).epsilon(1e-15));
    CHECK(yd(2) == doctest::Approx(4.0 + 0.5 / nrm).epsilon(1e-15));
}

TEST_CASE("delta grid and scenario validation") {
    const auto g = DeltaGrid{0.1, 0.25, 6}.values();
    REQUIRE(g.size() == 6);
    CHECK(g.back() == doctest::Approx(0.1 * std::pow(0.25, 5)));

    auto sc = denoising(HolderTail{1.0, 0.001});
    CHECK_NOTHROW(validate(sc));
    sc.solution = HolderTail{1.0, 1.0};
    CHECK_THROWS_AS(validate(sc), ConfigError);
    sc.solution = HolderTail{1.0, 0.001};
    sc.delta_grid.ratio = 1.5;
    CHECK_THROWS_AS(validate(sc), ConfigError);
    sc.delta_grid.ratio = 0.25;
    sc.q = 3.0;
    CHECK_THROWS_AS(validate(sc), ConfigError);
    sc.q = 2.0;
    sc.op = OperatorSpec::cesaro(2000);
    sc.p = 3.0;
    CHECK_THROWS_AS(validate(sc), ConfigError);
}

TEST_CASE("rate fit on exact power laws") {
    const std::vector<double> d{1e-1, 2.5e-2, 6.25e-3, 1.5625e-3, 3.90625e-4};
    std::vector<double> e1, e2;
    for (double x : d) {
        e1.push_back(std::pow(x, 2.0 / 3.0));
        e2.push_back(3.0 * x);
    }
    const auto f1 = fit_rate_exponent(d, e1);
    CHECK(f1.slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(f1.r2 == doctest::Approx(1.0).epsilon(1e-12));
    const auto f2 = fit_rate_exponent(d, e2);
    CHECK(f2.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f2.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(fit_rate_exponent(std::span(d).first(3), std::span(e1).first(3)), InvalidParameter);

    std::vector<RateRunRecord> recs;
    for (std::size_t i = 0; i < d.size(); ++i) recs.push_back({d[i], 1.0, e1[i], 1.0, 1, 1.0, RecordStatus::Ok, ""});
    recs.push_back({1e-5, NAN, NAN, NAN, 0, 1.0, RecordStatus::Failed, "boom"});
    CHECK(fit_rate_exponent(recs).slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("envelope check") {
    std::vector<RateRunRecord> recs;
    for (double d : {1e-1, 1e-2, 1e-3}) recs.push_back({d, 1.0, std::sqrt(d), 1.0, 1, std::sqrt(d)});
    const auto one = phi_envelope_check(recs);
    CHECK(one.c_fit == doctest::Approx(1.0));
    CHECK(one.pass);
    for (auto& r : recs) r.error_l1 *= 0.5;
    CHECK(phi_envelope_check(recs).c_fit == doctest::Approx(0.5));
    for (auto& r : recs) r.error_l1 *= 20.0;
    CHECK_FALSE(phi_envelope_check(recs, 4.0).pass);
    recs[0].phi2_at_delta = 0.0;
    CHECK_THROWS_AS(phi_envelope_check(recs), ContractViolation);
}

TEST_CASE("denoising run: residuals in band, error decreasing, deterministic") {
    const auto sc = denoising(HolderTail{1.0, 0.004});
    const auto recs = run_rate_experiment(sc);
    REQUIRE(recs.size() == 5);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        if (i > 0) CHECK(r.delta < recs[i - 1].delta);
        if (r.status == RecordStatus::Ok) {
            CHECK(r.residual >= 1.1 * r.delta * (1 - 1e-12));
            CHECK(r.residual <= 1.5 * r.delta * (1 + 1e-12));
            if (i > 0) CHECK(r.error_l1 < recs[i - 1].error_l1);
        }
        CHECK(std::isfinite(r.phi2_at_delta));
    }
    const auto again = run_rate_experiment(sc);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(again[i].alpha == recs[i].alpha);
        CHECK(again[i].error_l1 == recs[i].error_l1);
    }
}

TEST_CASE("sparse solution: support recovered at small noise") {
    auto sc = denoising(Sparse{{{3, 1.0}, {10, -0.5}, {40, 0.8}}}, 200);
    sc.delta_grid = {0.01, 0.25, 4};
    const auto recs = run_rate_experiment(sc);
    const auto x_dag = generate_solution(sc.solution, 200);
    const auto& last = recs.back();
    REQUIRE(last.status == RecordStatus::Ok);
    // re-run the last grid point by hand to inspect the support
    const auto y = generate_noise(apply(sc.op, x_dag), last.delta, 2.0, sc.noise.seed, sc.noise.mode, recs.size() - 1);
    const auto x = solve({sc.op, y, 2.0, 2.0, last.alpha}).x;
    CHECK(l0_count(x) == 3);
    for (std::size_t k : {3ul, 10ul, 40ul}) CHECK(x(k) != 0.0);
    CHECK(lq_norm(x - x_dag, 1.0) == doctest::Approx(last.error_l1).epsilon(1e-12));
}

TEST_CASE("zero solution takes the degenerate branch") {
    auto sc = denoising(Sparse{}, 300);
    sc.delta_grid = {0.1, 0.5, 4};
    for (const auto& r : run_rate_experiment(sc)) {
        CHECK(r.status == RecordStatus::Degenerate);
        CHECK(r.error_l1 == 0.0);
        CHECK(r.residual == doctest::Approx(r.delta).epsilon(1e-12));
    }
}

TEST_CASE("failures are recorded, not thrown") {
    // a zero-width band cannot be hit by bisection
    auto sc = denoising(HolderTail{1.0, 0.004});
    sc.rule = DiscrepancyRule{1.2, 1.2};
    sc.delta_grid = {1e-3, 0.25, 2};
    const auto recs = run_rate_experiment(sc);
    REQUIRE(recs.size() == 2);
    for (const auto& r : recs) {
        CHECK(r.status == RecordStatus::Failed);
        CHECK(std::isnan(r.error_l1));
        CHECK_FALSE(r.message.empty());
    }
    CHECK(to_string(RecordStatus::Failed) == "failed");
    CHECK(to_string(RecordStatus::Unconverged) == "unconverged");
}

TEST_CASE("a priori rule with alpha above the data scale gives zero") {
    auto sc = denoising(HolderTail{1.0, 0.004}, 2000);
    sc.op = OperatorSpec::cesaro(2000);
    sc.rule = APrioriRule{1.0};
    sc.delta_grid = {0.1, 0.25, 2};
    const auto x_dag = generate_solution(sc.solution, 2000);
    for (const auto& r : run_rate_experiment(sc)) {
        CHECK(r.status == RecordStatus::Ok);
        CHECK(r.alpha == r.delta);
        CHECK(r.error_l1 == doctest::Approx(lq_norm(x_dag, 1.0)).epsilon(1e-14));
    }
}

TEST_CASE("variational slack samples are nonnegative") {
    for (const auto& op : {OperatorSpec::cesaro(200), OperatorSpec::embedding(2.0, 200), OperatorSpec::diagonal_power(1.0, 200)}) {
        auto sc = denoising(HolderTail{1.0, 1.0}, 200);
        sc.op = op;
        for (const auto& s : variational_slack_samples(sc, 60, 3)) {
            CHECK(s.phi2_slack >= -1e-9);
            CHECK(s.phi1_slack >= s.phi2_slack - 1e-9);
        }
    }
}
