#pragma once

#include "hom.hpp"
#include "random.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace orbitcert {

/// Searches an affine family offset + span(directions) for a member accepted
/// by `accept` (typically: all components invertible). First 8 seeded random
/// points with coefficients in {-2..2} (uniform over F_p), then
/// `deterministic_points` points on the moment curve c_k = s^k, s = 1, 2, ...
/// Restricted to the curve, det of a d x d family in h directions is a
/// polynomial of degree <= d*(h-1), so 2*d*h points detect it whenever it
/// does not vanish identically on the curve.
template <ExactField F, class Member>
std::optional<Member> search_affine_family(
    const F& field, std::size_t directions, std::size_t deterministic_points, std::uint64_t seed,
    const std::function<Member(const std::vector<typename F::Scalar>&)>& build,
    const std::function<bool(const Member&)>& accept) {
    using S = typename F::Scalar;
    Rng rng(seed);
    std::vector<S> c(directions, field.zero());
    for (int trial = 0; trial < 8; ++trial) {
        for (auto& x : c) {
            if constexpr (F::characteristic_zero)
                x = field.from_int(rng.between(-2, 2));
            else
                x = field.from_int(long(rng.below(field.p)));
        }
        auto m = build(c);
        if (accept(m)) return m;
    }
    for (std::size_t s = 1; s <= deterministic_points; ++s) {
        S pw = field.one();
        const S base = field.from_int(long(s));
        for (auto& x : c) {
            x = pw;
            pw = pw * base;
        }
        auto m = build(c);
        if (accept(m)) return m;
    }
    return std::nullopt;
}

/// An invertible element of Hom(m, n), if one is found.
template <ExactField F>
std::optional<Matrix<F>> find_isomorphism(const ModulePoint<F>& m, const ModulePoint<F>& n,
                                          std::uint64_t seed = 0x150ULL) {
    require_same_algebra(m, n);
    if (m.dim() != n.dim()) return std::nullopt;
    if (m.dim() == 0) return Matrix<F>(m.field(), 0, 0);
    const auto hs = hom_basis(m, n);
    if (hs.dim() != hom_dim(m, m) || hs.dim() == 0) return std::nullopt;
    return search_affine_family<F, Matrix<F>>(
        m.field(), hs.dim(), 2 * m.dim() * hs.dim(), seed,
        [&](const std::vector<typename F::Scalar>& c) { return hs.combine(c); },
        [](const Matrix<F>& x) { return is_invertible(x); });
}

template <ExactField F>
bool is_isomorphic(const ModulePoint<F>& m, const ModulePoint<F>& n) {
    return find_isomorphism(m, n).has_value();
}

}  // namespace orbitcert
