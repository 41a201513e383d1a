#pragma once

// Reference computations used only by the tests. They rebuild each quantity from
// its defining formula (dense matrices, enumeration, grid search, direct sums)
// and share no code path with the library routines they check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace l1reg::oracle {

using Matrix = std::vector<std::vector<double>>;

/// Dense N x N Cesaro section: a_{nk} = 1/n for k <= n.
inline Matrix cesaro_matrix(std::size_t n) {
    Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c <= r; ++c) m[r][c] = 1.0 / static_cast<double>(r + 1);
    return m;
}

inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.size(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
    return y;
}

inline std::vector<double> matvec_transposed(const Matrix& m, const std::vector<double>& w) {
    std::vector<double> y(m.empty() ? 0 : m[0].size(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < y.size(); ++c) y[c] += m[r][c] * w[r];
    return y;
}

/// sum_{n=k}^{M} 1/n^2 plus the midpoint of the tail bracket [1/(M+1), 1/M].
inline double inverse_square_tail(std::size_t k, std::size_t m = 1'000'000) {
    double s = 0.0;
    for (std::size_t n = m; n >= k; --n) s += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    const double dm = static_cast<double>(m);
    return s + 0.5 * (1.0 / (dm + 1.0) + 1.0 / dm);
}

/// argmin over s in [lo, hi] on a uniform grid of the given step.
inline double grid_argmin(const std::function<double(double)>& f, double lo, double hi, double step) {
    double best_s = lo, best_v = f(lo);
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step));
    for (std::size_t i = 1; i <= count; ++i) {
        const double s = lo + static_cast<double>(i) * step;
        const double v = f(s);
        if (v < best_v) {
            best_v = v;
            best_s = s;
        }
    }
    return best_s;
}

/// Minimum over integers n in [1, n_max] of g(n), by plain enumeration.
inline double integer_min(const std::function<double(std::size_t)>& g, std::size_t n_max) {
    double best = g(1);
    for (std::size_t n = 2; n <= n_max; ++n) best = std::min(best, g(n));
    return best;
}

/// Small deterministic generator for test inputs (xorshift64*).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x2545F4914F6CDD1DULL) {}
    double uniform(double lo = -1.0, double hi = 1.0) {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        const std::uint64_t bits = state_ * 0x2545F4914F6CDD1DULL;
        return lo + (hi - lo) * static_cast<double>(bits >> 11) * 0x1.0p-53;
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0.0, 1.0) * static_cast<double>(n)) % n; }
    std::vector<double> vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
        std::vector<double> v(n);
        for (double& e : v) e = uniform(lo, hi);
        return v;
    }

private:
    std::uint64_t state_;
};

} // namespace l1reg::oracle
