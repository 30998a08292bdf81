#pragma once

// Endomorphism algebras: structure constants, the Jacobson radical (trace-form
// criterion, characteristic zero), indecomposability verdicts, radical
// homomorphisms and Fitting decompositions.

#include "hom.hpp"
#include "polynomial.hpp"
#include "random.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace orbitcert {

template <ExactField F>
struct EndAlgebra {
    HomSpace<F> space;  // source == target
    // structure[i][j] = coordinates of basis[i] * basis[j]
    std::vector<std::vector<std::vector<typename F::Scalar>>> structure;
    Matrix<F> radical;  // columns = coordinate vectors spanning rad(End)

    const ModulePoint<F>& module() const { return space.source; }
    std::size_t dim() const { return space.dim(); }
    std::size_t radical_dim() const { return radical.cols(); }
    const std::vector<Matrix<F>>& basis() const { return space.basis; }

    std::vector<Matrix<F>> radical_matrices() const {
        std::vector<Matrix<F>> out;
        for (std::size_t k = 0; k < radical.cols(); ++k) {
            std::vector<typename F::Scalar> c;
            for (std::size_t i = 0; i < radical.rows(); ++i) c.push_back(radical(i, k));
            out.push_back(space.combine(c));
        }
        return out;
    }

    /// Membership of an endomorphism in rad(End).
    bool in_radical(const Matrix<F>& e) const {
        auto c = space.coordinates(e);
        if (!c) throw NotAHomomorphism("element is not an endomorphism of the module");
        Matrix<F> v(space.source.field(), c->size(), 1);
        for (std::size_t i = 0; i < c->size(); ++i) v(i, 0) = (*c)[i];
        return in_span(radical, v);
    }
};

template <ExactField F>
void require_char_zero(const char* what) {
    if constexpr (!F::characteristic_zero)
        throw UnsupportedField(std::string(what) + " requires a characteristic-zero field");
}

/// Basis, structure constants and radical of End_A(m). The radical is the
/// kernel of the trace form (x, y) -> tr L(xy) of the left-regular
/// representation, which is exact in characteristic zero only.
template <ExactField F>
EndAlgebra<F> end_algebra(const ModulePoint<F>& m) {
    require_char_zero<F>("endomorphism radical");
    using S = typename F::Scalar;
    const F& field = m.field();
    EndAlgebra<F> e{hom_basis(m, m), {}, Matrix<F>(field, 0, 0)};
    const std::size_t n = e.dim();
    e.structure.assign(n, std::vector<std::vector<S>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto c = e.space.coordinates(e.space.basis[i] * e.space.basis[j]);
            if (!c) throw Error("endomorphism product left the Hom space");
            e.structure[i][j] = std::move(*c);
        }
    std::vector<S> trace_left(n, field.zero());
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) trace_left[k] += e.structure[k][j][j];
    Matrix<F> form(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!F::is_zero(e.structure[i][j][k])) form(i, j) += e.structure[i][j][k] * trace_left[k];
    e.radical = n ? kernel_matrix(form) : Matrix<F>(field, 0, 0);
    return e;
}

enum class SplitVerdict { Yes, No, Inconclusive };

inline const char* to_string(SplitVerdict v) {
    switch (v) {
        case SplitVerdict::Yes: return "yes";
        case SplitVerdict::No: return "no";
        case SplitVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

template <ExactField F>
struct SplitReport {
    SplitVerdict verdict = SplitVerdict::Inconclusive;
    std::size_t end_dim = 0;
    std::size_t radical_dim = 0;
    std::optional<Matrix<F>> witness;  // non-nilpotent, non-invertible endomorphism when verdict = No
};

namespace detail {

template <ExactField F>
bool splits_module(const Matrix<F>& u) {
    return rank(u) < u.rows() && !is_nilpotent(u);
}

/// Endomorphisms worth probing for a Fitting split: basis elements, pairwise
/// sums, then seeded random combinations.
template <ExactField F>
std::vector<Matrix<F>> probe_elements(const HomSpace<F>& space, std::uint64_t seed) {
    std::vector<Matrix<F>> out = space.basis;
    const auto& b = space.basis;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) out.push_back(b[i] + b[j]);
    Rng rng(seed);
    const F& field = space.source.field();
    for (int k = 0; k < 16 && !b.empty(); ++k) {
        std::vector<typename F::Scalar> c;
        for (std::size_t i = 0; i < b.size(); ++i) c.push_back(field.from_int(rng.between(-3, 3)));
        out.push_back(space.combine(c));
    }
    return out;
}

}  // namespace detail

/// Yes iff End/rad = k. No comes with an explicit witness of decomposability.
/// Inconclusive when no witness was found although End/rad is bigger than k
/// (e.g. a proper field extension of Q).
template <ExactField F>
SplitReport<F> split_indecomposable(const ModulePoint<F>& m) {
    require_char_zero<F>("indecomposability test");
    SplitReport<F> rep;
    if (m.dim() == 0) {
        rep.verdict = SplitVerdict::No;
        return rep;
    }
    const auto e = end_algebra(m);
    rep.end_dim = e.dim();
    rep.radical_dim = e.radical_dim();
    if (rep.end_dim - rep.radical_dim == 1) {
        rep.verdict = SplitVerdict::Yes;
        return rep;
    }
    if constexpr (std::is_same_v<F, RationalField>) {
        for (const auto& x : detail::probe_elements(e.space, 0x5eedULL)) {
            const auto chi = poly::charpoly(x);
            std::vector<poly::Poly> factors = poly::squarefree_parts(chi);
            for (const auto& root : poly::rational_roots(chi)) factors.push_back(poly::Poly{-root, 1});
            for (const auto& q : factors) {
                auto u = poly::evaluate(q, x);
                if (detail::splits_module(u)) {
                    rep.verdict = SplitVerdict::No;
                    rep.witness = std::move(u);
                    return rep;
                }
            }
        }
    }
    rep.verdict = SplitVerdict::Inconclusive;
    return rep;
}

/// Finite-field counterpart used by the bounded searches: enumerates every
/// element of End when p^[M,M] <= cap. Yes iff every endomorphism is a scalar
/// plus a nilpotent (End/rad = F_p).
inline SplitReport<PrimeField> split_indecomposable_by_enumeration(const ModulePoint<PrimeField>& m,
                                                                   std::uint64_t cap = 1u << 16) {
    SplitReport<PrimeField> rep;
    if (m.dim() == 0) {
        rep.verdict = SplitVerdict::No;
        return rep;
    }
    const auto space = hom_basis(m, m);
    const std::size_t n = space.dim();
    rep.end_dim = n;
    const std::uint32_t p = m.field().p;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= p;
        if (total > cap) return rep;  // inconclusive: too large to enumerate
    }
    bool all_local = true;
    std::vector<Fp> coef(n, m.field().zero());
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            coef[i] = m.field().from_int(long(c % p));
            c /= p;
        }
        const auto x = space.combine(coef);
        if (detail::splits_module(x)) {
            rep.verdict = SplitVerdict::No;
            rep.witness = x;
            return rep;
        }
        bool scalar_plus_nilpotent = false;
        for (std::uint32_t lambda = 0; lambda < p && !scalar_plus_nilpotent; ++lambda) {
            auto y = x;
            for (std::size_t i = 0; i < m.dim(); ++i) y(i, i) -= m.field().from_int(long(lambda));
            scalar_plus_nilpotent = is_nilpotent(y);
        }
        all_local = all_local && scalar_plus_nilpotent;
    }
    rep.verdict = all_local ? SplitVerdict::Yes : SplitVerdict::Inconclusive;
    if (all_local) rep.radical_dim = n - 1;
    return rep;
}

/// f: src -> tgt is radical iff g*f lies in rad End(src) for every g in Hom(tgt, src).
template <ExactField F>
bool is_radical_hom(const Matrix<F>& f, const ModulePoint<F>& src, const ModulePoint<F>& tgt) {
    require_char_zero<F>("radical homomorphism test");
    require_homomorphism(f, src, tgt, "f");
    if (src.dim() == 0 || tgt.dim() == 0) return true;
    const auto back = hom_basis(tgt, src);
    const auto end = end_algebra(src);
    for (const auto& g : back.basis)
        if (!end.in_radical(g * f)) return false;
    return true;
}

template <ExactField F>
struct FittingParts {
    ModulePoint<F> image_part;   // restriction to im(e^d)
    ModulePoint<F> kernel_part;  // restriction to ker(e^d)
    Matrix<F> change;            // P = [im basis | ker basis]; P^-1 m P is block diagonal
};

/// Fitting decomposition m = im(e^d) + ker(e^d) along an endomorphism e.
template <ExactField F>
FittingParts<F> fitting_split(const Matrix<F>& e, const ModulePoint<F>& m) {
    require_homomorphism(e, m, m, "e");
    const auto power = e.pow(m.dim());
    const auto img = column_space(power);
    const auto ker = kernel_matrix(power);
    return {restrict_to(m, img), restrict_to(m, ker), hstack(img, ker)};
}

}  // namespace orbitcert
