#pragma once

#include "linalg.hpp"

#include <cstdint>
#include <random>

namespace orbitcert {

/// Seeded generator. Values are derived from mt19937_64 output by plain
/// modular reduction so sequences are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }
    long between(long lo, long hi) { return lo + long(below(std::uint64_t(hi - lo + 1))); }
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 engine_;
};

/// Entries drawn from [lo, hi] (reduced mod p over F_p); each entry is zero
/// with probability `zero_percent`.
template <ExactField F>
Matrix<F> random_matrix(const F& field, Rng& rng, std::size_t rows, std::size_t cols, long lo = -2,
                        long hi = 2, unsigned zero_percent = 0) {
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!rng.chance(zero_percent)) m(i, j) = field.from_int(rng.between(lo, hi));
    return m;
}

/// Unit lower times unit upper triangular: always invertible.
template <ExactField F>
Matrix<F> random_invertible(const F& field, Rng& rng, std::size_t n, long lo = -2, long hi = 2) {
    Matrix<F> l = Matrix<F>::identity(field, n), u = Matrix<F>::identity(field, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = field.from_int(rng.between(lo, hi));
            u(j, i) = field.from_int(rng.between(lo, hi));
        }
    // a random permutation keeps the result from always being LU-shaped
    Matrix<F> p(field, n, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = field.one();
    return p * l * u;
}

}  // namespace orbitcert
