#include "doctest.h"

#include <cmath>
#include <numbers>

#include "l1reg/errors.hpp"
#include "l1reg/operators.hpp"
#include "oracles.hpp"

using namespace l1reg;

namespace {

std::vector<OperatorSpec> zoo(std::size_t n) {
    return {OperatorSpec::cesaro(n), OperatorSpec::diagonal_power(1.0, n), OperatorSpec::diagonal_power(0.5, n),
            OperatorSpec::embedding(1.0, n), OperatorSpec::embedding(2.0, n), OperatorSpec::embedding(3.0, n),
            OperatorSpec::embedding(kInfinity, n)};
}

} // namespace

TEST_CASE("apply examples") {
    const auto c = apply(OperatorSpec::cesaro(4), TruncatedSequence({1, 1, 1, 0}));
    CHECK(c == TruncatedSequence({1, 1, 1, 0.75}));

    const auto d = apply(OperatorSpec::diagonal({1.0, 0.5, 1.0 / 3.0}), TruncatedSequence({1, 2, 3}));
    CHECK(d(1) == 1.0);
    CHECK(d(2) == 1.0);
    CHECK(d(3) == doctest::Approx(1.0));

    const TruncatedSequence x({0.3, -2, 5});
    CHECK(apply(OperatorSpec::embedding(3.0, 3), x) == x);
    CHECK_THROWS_AS(apply(OperatorSpec::cesaro(4), x), DimensionMismatch);
}

TEST_CASE("Cesaro apply and adjoint match the dense section") {
    const std::size_t n = 30;
    const auto m = oracle::cesaro_matrix(n);
    oracle::Rng rng(11);
    const auto xv = rng.vector(n);
    const auto wv = rng.vector(n);
    const auto ax = apply(OperatorSpec::cesaro(n), TruncatedSequence(xv));
    const auto aw = apply_adjoint(OperatorSpec::cesaro(n), TruncatedSequence(wv));
    const auto ax_ref = oracle::matvec(m, xv);
    const auto aw_ref = oracle::matvec_transposed(m, wv);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(ax[i] == doctest::Approx(ax_ref[i]).epsilon(1e-13));
        CHECK(aw[i] == doctest::Approx(aw_ref[i]).epsilon(1e-13));
    }
}

TEST_CASE("apply_adjoint examples") {
    CHECK(apply_adjoint(OperatorSpec::cesaro(3), TruncatedSequence::unit(3, 1)) == TruncatedSequence({1, 0, 0}));

    // w = 3 e^(3) - 2 e^(2): sum_{n>=k} w_n / n gives e^(3)
    for (std::size_t n : {3ul, 5ul, 12ul}) {
        std::vector<double> w(n, 0.0);
        w[2] = 3.0;
        w[1] = -2.0;
        const auto r = apply_adjoint(OperatorSpec::cesaro(n), TruncatedSequence(w));
        for (std::size_t k = 1; k <= n; ++k) CHECK(r(k) == doctest::Approx(k == 3 ? 1.0 : 0.0).epsilon(1e-15));
    }

    const auto d = apply_adjoint(OperatorSpec::diagonal_power(1.0, 3), TruncatedSequence::unit(3, 2));
    CHECK(d == TruncatedSequence({0, 0.5, 0}));
}

TEST_CASE("adjoint consistency and linearity") {
    oracle::Rng rng(5);
    for (const auto& op : zoo(64)) {
        for (int trial = 0; trial < 50; ++trial) {
            const TruncatedSequence x(rng.vector(64)), w(rng.vector(64)), z(rng.vector(64));
            const double lhs = dot(apply(op, x), w);
            const double rhs = dot(x, apply_adjoint(op, w));
            CHECK(std::abs(lhs - rhs) <= 1e-10 * lq_norm(x, 2.0) * lq_norm(w, 2.0));

            const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
            const auto combined = apply(op, a * x + b * z);
            const auto separate = a * apply(op, x) + b * apply(op, z);
            CHECK(lq_norm(combined - separate, kInfinity) <= 1e-13 * (1 + lq_norm(separate, kInfinity)));
        }
    }
}

TEST_CASE("source elements") {
    const auto c = source_element(OperatorSpec::cesaro(5), 2);
    CHECK(c.coeffs == std::map<std::size_t, double>{{1, -1.0}, {2, 2.0}});
    CHECK(source_element(OperatorSpec::cesaro(5), 1).coeffs == std::map<std::size_t, double>{{1, 1.0}});

    const auto d = source_element(OperatorSpec::diagonal_power(1.0, 5), 3);
    REQUIRE(d.coeffs.size() == 1);
    CHECK(d.coeffs.at(3) == doctest::Approx(3.0).epsilon(1e-15));

    CHECK(source_element(OperatorSpec::embedding(2.0, 5), 5).coeffs == std::map<std::size_t, double>{{5, 1.0}});
    CHECK_THROWS_AS(source_element(OperatorSpec::cesaro(5), 6), IndexError);
    CHECK_THROWS_AS(source_element(OperatorSpec::cesaro(5), 0), IndexError);
}

TEST_CASE("link condition holds on every section index") {
    for (const auto& op : zoo(200))
        for (std::size_t k = 1; k <= op.size(); ++k) REQUIRE(verify_link_condition(op, k, 1e-12));
}

TEST_CASE("perturbed source element fails the link condition") {
    const auto op = OperatorSpec::cesaro(10);
    auto f = source_element(op, 4);
    f.coeffs[4] += 0.1;
    CHECK_FALSE(verify_link_condition(op, f, 1e-12));

    const auto diag = OperatorSpec::diagonal_power(1.0, 10);
    auto g = source_element(diag, 4);
    g.coeffs[4] += 0.1;
    CHECK_FALSE(verify_link_condition(diag, g, 1e-12));
}

TEST_CASE("column norms") {
    CHECK(column_norm(OperatorSpec::embedding(3.0, 10), 7) == 1.0);
    CHECK(column_norm(OperatorSpec::embedding(kInfinity, 10), 100) == 1.0);
    CHECK(column_norm(OperatorSpec::diagonal_power(1.0, 10), 4) == doctest::Approx(0.25).epsilon(1e-15));

    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(column_norm(OperatorSpec::cesaro(3), 1) == doctest::Approx(std::sqrt(pi2_6)).epsilon(1e-14));
    CHECK(column_norm(OperatorSpec::cesaro(3), 1) == doctest::Approx(1.28255).epsilon(1e-5));

    // independent route: partial sum to 1e6 plus bracketed tail, and N-independence
    for (std::size_t k : {1ul, 2ul, 3ul, 10ul, 57ul, 1000ul}) {
        const double ref = std::sqrt(oracle::inverse_square_tail(k));
        CHECK(std::abs(column_norm(OperatorSpec::cesaro(5), k) - ref) <= 1e-10);
        CHECK(column_norm(OperatorSpec::cesaro(5), k) == column_norm(OperatorSpec::cesaro(5000), k));
    }
    double previous = kInfinity;
    for (std::size_t k = 1; k <= 2000; ++k) {
        const double c = column_norm(OperatorSpec::cesaro(1), k);
        REQUIRE(c < previous);
        previous = c;
    }
    CHECK(previous < 0.023);
}

TEST_CASE("dual combination norms") {
    const std::vector<int> alt{1, -1, 1};
    CHECK(dual_combination_norm(OperatorSpec::cesaro(3), alt) == doctest::Approx(std::sqrt(29.0)).epsilon(1e-15));

    // independent route: accumulate sum a_k f^(k) from source elements, then the dual norm by hand
    const auto op = OperatorSpec::cesaro(8);
    const std::vector<int> a{1, 0, -1, -1, 1, 0, 1, -1};
    std::vector<double> g(8, 0.0);
    for (std::size_t k = 1; k <= 8; ++k)
        for (const auto& [i, v] : source_element(op, k).coeffs) g[i - 1] += a[k - 1] * v;
    double sq = 0.0;
    for (double e : g) sq += e * e;
    CHECK(dual_combination_norm(op, a) == doctest::Approx(std::sqrt(sq)).epsilon(1e-15));

    for (std::size_t n : {1ul, 4ul, 9ul}) {
        const std::vector<int> ones(n, 1);
        CHECK(dual_combination_norm(OperatorSpec::embedding(2.0, 10), ones) ==
              doctest::Approx(std::sqrt(static_cast<double>(n))));
        CHECK(dual_combination_norm(OperatorSpec::embedding(1.0, 10), ones) == 1.0);
        CHECK(dual_combination_norm(OperatorSpec::embedding(kInfinity, 10), ones) == static_cast<double>(n));
    }
    for (const auto& o : zoo(6)) CHECK(dual_combination_norm(o, std::vector<int>(6, 0)) == 0.0);

    CHECK_THROWS_AS(dual_combination_norm(OperatorSpec::cesaro(2), alt), DimensionMismatch);
    CHECK_THROWS_AS(dual_combination_norm(OperatorSpec::cesaro(3), std::vector<int>{2, 0, 0}), InvalidParameter);
}

TEST_CASE("operator construction") {
    CHECK_THROWS_AS(OperatorSpec::diagonal({1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(OperatorSpec::diagonal({1.0, -0.5}), InvalidParameter);
    CHECK_THROWS_AS(OperatorSpec::diagonal_power(0.0, 4), InvalidParameter);
    CHECK_THROWS_AS(OperatorSpec::embedding(0.9, 4), InvalidParameter);
    CHECK_THROWS_AS(OperatorSpec::cesaro(0), InvalidParameter);
    CHECK(OperatorSpec::embedding(kInfinity, 3).dual_norm_index() == 1.0);
    CHECK(std::isinf(OperatorSpec::embedding(1.0, 3).dual_norm_index()));
    CHECK(OperatorSpec::embedding(3.0, 3).dual_norm_index() == doctest::Approx(1.5));
    CHECK(OperatorSpec::cesaro(3).image_norm_index() == 2.0);
    CHECK(OperatorSpec::cesaro(3).with_size(9).size() == 9);
    CHECK_THROWS_AS(OperatorSpec::diagonal({1.0, 0.5}).with_size(3), InvalidParameter);
}
