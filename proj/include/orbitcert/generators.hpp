#pragma once

// Seeded instance generators for the property suites: quiver representations,
// block-triangular modules with a built-in submodule, random exact sequences
// and cusp (bi)modules.

#include "cusp.hpp"
#include "degen.hpp"

#include <string>
#include <vector>

namespace orbitcert {

struct Arrow {
    std::size_t source, target;
    std::string name;
};

struct Quiver {
    std::size_t vertices = 0;
    std::vector<Arrow> arrows;
};

/// Path algebra kQ presented by idempotents e_v and arrows a = e_t a e_s.
/// Generators: e_0 .. e_{n-1}, then the arrows.
template <ExactField F>
AlgebraRef<F> path_algebra(const F& field, const Quiver& q) {
    const std::size_t n = q.vertices;
    std::vector<Relation<F>> rels;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back("e" + std::to_string(v + 1));
    for (const auto& a : q.arrows) names.push_back(a.name);
    const auto one = field.one(), minus = field.from_int(-1);
    for (std::size_t v = 0; v < n; ++v) {
        rels.push_back({{one, {v, v}}, {minus, {v}}});
        for (std::size_t w = 0; w < n; ++w)
            if (w != v) rels.push_back({{one, {v, w}}});
    }
    Relation<F> unit;
    for (std::size_t v = 0; v < n; ++v) unit.push_back({one, {v}});
    unit.push_back({minus, {}});
    rels.push_back(unit);
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
        const std::size_t a = n + k;
        rels.push_back({{one, {a}}, {minus, {a, q.arrows[k].source}}});
        rels.push_back({{one, {a}}, {minus, {q.arrows[k].target, a}}});
    }
    return std::make_shared<const AlgebraPresentation<F>>(field, n + q.arrows.size(), std::move(rels),
                                                          std::move(names));
}

/// Module point of a representation with vertex spaces k^dims[v] and arrow
/// maps maps[k] (dims[target] x dims[source]).
template <ExactField F>
ModulePoint<F> quiver_module(AlgebraRef<F> alg, const Quiver& q, const std::vector<std::size_t>& dims,
                             const std::vector<Matrix<F>>& maps) {
    std::vector<std::size_t> offset(q.vertices + 1, 0);
    for (std::size_t v = 0; v < q.vertices; ++v) offset[v + 1] = offset[v] + dims[v];
    const std::size_t d = offset.back();
    const F& field = alg->field;
    std::vector<Matrix<F>> mats;
    for (std::size_t v = 0; v < q.vertices; ++v) {
        Matrix<F> e(field, d, d);
        for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) e(i, i) = field.one();
        mats.push_back(std::move(e));
    }
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
        Matrix<F> a(field, d, d);
        a.set_block(offset[q.arrows[k].target], offset[q.arrows[k].source], maps[k]);
        mats.push_back(std::move(a));
    }
    return ModulePoint<F>(std::move(alg), d, std::move(mats));
}

inline Quiver kronecker_quiver() { return {2, {{0, 1, "a"}, {0, 1, "b"}}}; }
inline Quiver linear_quiver(std::size_t n) {
    Quiver q{n, {}};
    for (std::size_t v = 0; v + 1 < n; ++v) q.arrows.push_back({v, v + 1, "a" + std::to_string(v + 1)});
    return q;
}

template <ExactField F>
ModulePoint<F> random_quiver_module(AlgebraRef<F> alg, const Quiver& q, const std::vector<std::size_t>& dims,
                                    Rng& rng, unsigned zero_percent = 30) {
    std::vector<Matrix<F>> maps;
    for (const auto& a : q.arrows)
        maps.push_back(random_matrix(alg->field, rng, dims[a.target], dims[a.source], -2, 2, zero_percent));
    return quiver_module(std::move(alg), q, dims, maps);
}

/// Module over the free algebra with block upper triangular generators
/// [[X_i, C_i], [0, Y_i]]; the first `sub` coordinates are a submodule.
template <ExactField F>
ModulePoint<F> random_triangular_module(AlgebraRef<F> free, std::size_t sub, std::size_t quo, Rng& rng,
                                        unsigned zero_percent = 30) {
    const F& field = free->field;
    const std::size_t d = sub + quo;
    std::vector<Matrix<F>> mats;
    for (std::size_t i = 0; i < free->generators; ++i) {
        Matrix<F> m(field, d, d);
        m.set_block(0, 0, random_matrix(field, rng, sub, sub, -2, 2, zero_percent));
        m.set_block(sub, sub, random_matrix(field, rng, quo, quo, -2, 2, zero_percent));
        m.set_block(0, sub, random_matrix(field, rng, sub, quo, -2, 2, zero_percent));
        mats.push_back(std::move(m));
    }
    return ModulePoint<F>(std::move(free), d, std::move(mats));
}

/// A random invariant subspace: the closure of one or two random vectors.
template <ExactField F>
Matrix<F> random_submodule(const ModulePoint<F>& m, Rng& rng) {
    const std::size_t seeds = 1 + rng.below(2);
    return invariant_closure(m.mats(), random_matrix(m.field(), rng, m.dim(), seeds, -1, 1, 40));
}

/// 0 -> U -> W -> V -> 0 over the free algebra: W is block triangular with a
/// random extension block, a coboundary (split, but not visibly) or zero, and
/// is then moved by a random change of basis.
template <ExactField F>
ShortExactCandidate<F> random_exact_sequence(AlgebraRef<F> free, std::size_t du, std::size_t dv, Rng& rng) {
    const F& field = free->field;
    const std::size_t dw = du + dv;
    std::vector<Matrix<F>> u, v, w;
    const auto kind = rng.below(3);
    const Matrix<F> x = random_matrix(field, rng, du, dv, -2, 2, 20);
    for (std::size_t i = 0; i < free->generators; ++i) {
        u.push_back(random_matrix(field, rng, du, du, -1, 1, 50));
        v.push_back(random_matrix(field, rng, dv, dv, -1, 1, 50));
        Matrix<F> c(field, du, dv);
        if (kind == 0) c = random_matrix(field, rng, du, dv, -2, 2, 20);
        if (kind == 1) c = u.back() * x - x * v.back();
        Matrix<F> m(field, dw, dw);
        m.set_block(0, 0, u.back());
        m.set_block(du, du, v.back());
        m.set_block(0, du, c);
        w.push_back(std::move(m));
    }
    ModulePoint<F> U(free, du, u), V(free, dv, v), W(free, dw, w);
    Matrix<F> f(field, dw, du), g(field, dv, dw);
    for (std::size_t k = 0; k < du; ++k) f(k, k) = field.one();
    for (std::size_t k = 0; k < dv; ++k) g(k, du + k) = field.one();
    const Matrix<F> p = random_invertible(field, rng, dw, -1, 1);
    return {U, W.conjugate(p), V, p * f, g * *inverse(p)};
}

// ---- cusp ring -------------------------------------------------------------

/// Action of m^2 and m^3 on the span of monomials m^e, e in `exps` (a set of
/// exponents closed under "e + 2, e + 3 if present"); monomials leaving the set
/// act as zero.
template <ExactField F>
CuspModule<F> monomial_cusp_module(const F& field, const std::vector<unsigned>& exps) {
    const std::size_t n = exps.size();
    CuspModule<F> m{n, Matrix<F>(field, n, n), Matrix<F>(field, n, n), Side::Left};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (exps[i] == exps[j] + 2) m.A(i, j) = field.one();
            if (exps[i] == exps[j] + 3) m.B(i, j) = field.one();
        }
    return m;
}

/// R / m^n R-truncation: monomials of R of degree < n.
template <ExactField F>
CuspModule<F> truncated_cusp_ring(const F& field, unsigned n) {
    std::vector<unsigned> e;
    for (unsigned k = 0; k < n; ++k)
        if (k != 1) e.push_back(k);
    return monomial_cusp_module(field, e);
}

/// R / m^i R for i >= 2: monomials of degree < i plus m^(i+1).
template <ExactField F>
CuspModule<F> cusp_principal_quotient(const F& field, unsigned i) {
    std::vector<unsigned> e;
    for (unsigned k = 0; k < i; ++k)
        if (k != 1) e.push_back(k);
    e.push_back(i + 1);
    return monomial_cusp_module(field, e);
}

/// Restriction of a k[T]-module: A = T^2, B = T^3.
template <ExactField F>
CuspModule<F> cusp_from_endomorphism(const Matrix<F>& t) {
    return {t.rows(), t * t, t.pow(3), Side::Left};
}

template <ExactField F>
CuspModule<F> cusp_direct_sum(const CuspModule<F>& a, const CuspModule<F>& b) {
    return {a.dim + b.dim, block_diag(a.A, b.A), block_diag(a.B, b.B), a.side};
}

template <ExactField F>
CuspModule<F> conjugate(const CuspModule<F>& m, const Matrix<F>& g) {
    const Matrix<F> gi = *inverse(g);
    return {m.dim, g * m.A * gi, g * m.B * gi, m.side};
}

/// The right module with the transposed actions (and its mirror).
template <ExactField F>
CuspModule<F> transpose(const CuspModule<F>& m) {
    return {m.dim, m.A.transpose(), m.B.transpose(), m.side == Side::Left ? Side::Right : Side::Left};
}

/// A random cusp module of dimension about `size` (never zero).
template <ExactField F>
CuspModule<F> random_cusp_module(const F& field, Rng& rng, std::size_t size) {
    CuspModule<F> out{0, Matrix<F>(field, 0, 0), Matrix<F>(field, 0, 0), Side::Left};
    while (out.dim < size) {
        const std::size_t room = size - out.dim;
        CuspModule<F> piece;
        switch (rng.below(4)) {
            case 0: piece = truncated_cusp_ring(field, unsigned(1 + rng.below(std::min<std::size_t>(room, 5) + 1))); break;
            case 1: piece = cusp_principal_quotient(field, unsigned(2 + rng.below(3))); break;
            case 2: {
                // nilpotent Jordan block
                const std::size_t n = 1 + rng.below(std::min<std::size_t>(room, 4));
                Matrix<F> t(field, n, n);
                for (std::size_t k = 0; k + 1 < n; ++k) t(k, k + 1) = field.one();
                piece = cusp_from_endomorphism(t);
                break;
            }
            default: {
                // strictly upper triangular T, occasionally with a scalar shift
                const std::size_t n = 1 + rng.below(std::min<std::size_t>(room, 3));
                Matrix<F> t(field, n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j) t(i, j) = field.from_int(rng.between(-1, 1));
                if (rng.chance(15))
                    for (std::size_t i = 0; i < n; ++i) t(i, i) = field.from_int(rng.between(1, 2));
                piece = cusp_from_endomorphism(t);
            }
        }
        if (piece.dim == 0) continue;
        out = out.dim ? cusp_direct_sum(out, piece) : piece;
    }
    return conjugate(out, random_invertible(field, rng, out.dim, -1, 1));
}

/// Rejection-samples a module with [P1]; falls back to the zero module.
template <ExactField F>
CuspModule<F> random_p1_module(const F& field, Rng& rng, std::size_t size, int tries = 24) {
    for (int k = 0; k < tries; ++k) {
        auto m = random_cusp_module(field, rng, size);
        if (check_p1(m)) return m;
    }
    return {0, Matrix<F>(field, 0, 0), Matrix<F>(field, 0, 0), Side::Left};
}

/// L (x) R' with left actions on the first factor and right actions on the second.
template <ExactField F>
CuspBimodule<F> tensor_bimodule(const CuspModule<F>& l, const CuspModule<F>& r) {
    const F& field = l.A.field();
    const auto il = Matrix<F>::identity(field, l.dim), ir = Matrix<F>::identity(field, r.dim);
    return {l.dim * r.dim, kron(l.A, ir), kron(l.B, ir), kron(il, r.A), kron(il, r.B)};
}

/// M with equal left and right actions (R is commutative).
template <ExactField F>
CuspBimodule<F> symmetric_bimodule(const CuspModule<F>& m) {
    return {m.dim, m.A, m.B, m.A, m.B};
}

template <ExactField F>
CuspBimodule<F> bimodule_sum(const CuspBimodule<F>& a, const CuspBimodule<F>& b) {
    return {a.dim + b.dim, block_diag(a.LA, b.LA), block_diag(a.LB, b.LB), block_diag(a.RA, b.RA),
            block_diag(a.RB, b.RB)};
}

template <ExactField F>
CuspBimodule<F> conjugate(const CuspBimodule<F>& b, const Matrix<F>& g) {
    const Matrix<F> gi = *inverse(g);
    return {b.dim, g * b.LA * gi, g * b.LB * gi, g * b.RA * gi, g * b.RB * gi};
}

template <ExactField F>
std::vector<Matrix<F>> bimodule_actions(const CuspBimodule<F>& b) {
    return {b.LA, b.LB, b.RA, b.RB};
}

/// Sub-bimodule spanned by `basis` (invariant under all four actions).
template <ExactField F>
CuspBimodule<F> restrict_bimodule(const CuspBimodule<F>& b, const Matrix<F>& basis) {
    auto r = [&](const Matrix<F>& a) {
        auto x = solve(basis, a * basis);
        if (!x) throw Error("subspace is not a sub-bimodule");
        return *x;
    };
    return {basis.cols(), r(b.LA), r(b.LB), r(b.RA), r(b.RB)};
}

/// Random valid bimodule of dimension at most `max_dim`: tensor products,
/// symmetric bimodules, sums, quotients by random sub-bimodules, conjugates.
template <ExactField F>
CuspBimodule<F> random_cusp_bimodule(const F& field, Rng& rng, std::size_t max_dim) {
    CuspBimodule<F> b;
    switch (rng.below(6)) {
        case 0: {
            const std::size_t a = 1 + rng.below(3), c = 1 + rng.below(std::max<std::size_t>(1, max_dim / a));
            b = tensor_bimodule(random_cusp_module(field, rng, a), random_cusp_module(field, rng, std::min(c, max_dim / a)));
            break;
        }
        case 1: b = symmetric_bimodule(random_cusp_module(field, rng, 1 + rng.below(max_dim))); break;
        case 2: {
            const std::size_t half = std::max<std::size_t>(1, max_dim / 2);
            b = bimodule_sum(symmetric_bimodule(random_cusp_module(field, rng, 1 + rng.below(half))),
                             tensor_bimodule(random_cusp_module(field, rng, 1),
                                             random_cusp_module(field, rng, 1 + rng.below(half))));
            break;
        }
        case 3:
        case 4: {
            // both factors with [P1]: the tensor product has [P2], and so do its sums
            const std::size_t a = 1 + rng.below(2), c = 1 + rng.below(std::max<std::size_t>(1, max_dim / a));
            b = tensor_bimodule(random_p1_module(field, rng, a), random_p1_module(field, rng, c));
            if (b.dim == 0) b = symmetric_bimodule(random_cusp_module(field, rng, 1));
            break;
        }
        default: {
            const std::size_t a = 1 + rng.below(2);
            b = tensor_bimodule(random_cusp_module(field, rng, a), random_cusp_module(field, rng, 1 + rng.below(3)));
            if (b.dim > 1) {
                const auto sub = invariant_closure(bimodule_actions(b), random_matrix(field, rng, b.dim, 1, -1, 1, 30));
                if (sub.cols() > 0 && sub.cols() < b.dim) b = quotient_bimodule(b, sub);
            }
        }
    }
    if (b.dim > max_dim) return random_cusp_bimodule(field, rng, max_dim);
    if (b.dim == 0) return b;
    return conjugate(b, random_invertible(field, rng, b.dim, -1, 1));
}

}  // namespace orbitcert
