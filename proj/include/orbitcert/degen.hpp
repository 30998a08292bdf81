#pragma once

// Short exact sequences, splitting and factoring tests, degeneration
// certificates 0 -> Z -> Z+M -> N -> 0 and the checks built on them.

#include "endalg.hpp"
#include "iso.hpp"
#include "report.hpp"

#include <optional>
#include <string>
#include <utility>

namespace orbitcert {

struct PreconditionError : Error {
    using Error::Error;
};

/// Signals that the three splitting criteria disagree, which can only be an
/// implementation bug.
struct CriteriaDisagreement : Error {
    using Error::Error;
};

template <ExactField F>
struct ShortExactCandidate {
    ModulePoint<F> U, W, V;
    Matrix<F> f;  // U -> W
    Matrix<F> g;  // W -> V
};

template <ExactField F>
Report check_exact(const ShortExactCandidate<F>& s) {
    const auto& [U, W, V, f, g] = s;
    if (f.rows() != W.dim() || f.cols() != U.dim() || g.rows() != V.dim() || g.cols() != W.dim())
        throw DimensionMismatch("sequence maps have shapes " + f.shape() + " and " + g.shape());
    require_homomorphism(f, U, W, "f");
    require_homomorphism(g, W, V, "g");
    Report r;
    const auto rf = rank(f), rg = rank(g);
    r.set("rank_f", long(rf));
    r.set("rank_g", long(rg));
    if (!(g * f).is_zero()) r.fail("composition nonzero");
    if (rf != U.dim()) r.fail("f not injective");
    if (rg != V.dim()) r.fail("g not surjective");
    if (rf + rg != W.dim()) r.fail("image of f differs from kernel of g");
    return r;
}

/// Does u: U -> X factor as h*f for some hom h: W -> X?
template <ExactField F>
bool factors_through_left(const Matrix<F>& u, const Matrix<F>& f, const ModulePoint<F>& W,
                          const ModulePoint<F>& X) {
    if (u.cols() != f.cols() || u.rows() != X.dim() || f.rows() != W.dim())
        throw DimensionMismatch("factors_through_left: incompatible shapes " + u.shape() + ", " + f.shape());
    const auto hs = hom_basis(W, X);
    if (hs.dim() == 0) return u.is_zero();
    Matrix<F> sys(u.field(), u.rows() * u.cols(), hs.dim());
    for (std::size_t k = 0; k < hs.dim(); ++k) sys.set_block(0, k, vectorize(Matrix<F>(hs.basis[k] * f)));
    return solve(sys, vectorize(u)).has_value();
}

/// Does v: X -> V factor as g*h for some hom h: X -> W?
template <ExactField F>
bool factors_through_right(const Matrix<F>& v, const Matrix<F>& g, const ModulePoint<F>& X,
                           const ModulePoint<F>& W) {
    if (v.rows() != g.rows() || v.cols() != X.dim() || g.cols() != W.dim())
        throw DimensionMismatch("factors_through_right: incompatible shapes " + v.shape() + ", " + g.shape());
    const auto hs = hom_basis(X, W);
    if (hs.dim() == 0) return v.is_zero();
    Matrix<F> sys(v.field(), v.rows() * v.cols(), hs.dim());
    for (std::size_t k = 0; k < hs.dim(); ++k) sys.set_block(0, k, vectorize(Matrix<F>(g * hs.basis[k])));
    return solve(sys, vectorize(v)).has_value();
}

struct SplitCriteria {
    bool hom_into_U = false;    // [U+V, U] == [W, U]
    bool hom_from_V = false;    // [V, U+V] == [V, W]
    bool section = false;       // 1_U factors through f
    bool split() const { return section; }
};

/// Evaluates the three equivalent splitting criteria and insists they agree.
template <ExactField F>
SplitCriteria check_split(const ShortExactCandidate<F>& s) {
    if (!check_exact(s).passed()) throw PreconditionError("check_split needs an exact sequence");
    const auto& [U, W, V, f, g] = s;
    SplitCriteria c;
    c.hom_into_U = hom_dim(U, U) + hom_dim(V, U) == hom_dim(W, U);
    c.hom_from_V = hom_dim(V, U) + hom_dim(V, V) == hom_dim(V, W);
    c.section = factors_through_left(Matrix<F>::identity(U.field(), U.dim()), f, W, U);
    if (c.hom_into_U != c.section || c.hom_from_V != c.section)
        throw CriteriaDisagreement("splitting criteria disagree");
    return c;
}

/// Exact sequence 0 -> N -> T+M -> T -> 0, optional companion of a certificate.
template <ExactField F>
struct DualCertificate {
    ModulePoint<F> T;
    Matrix<F> f;
    Matrix<F> g;
};

/// Witness 0 -> Z -f-> Z+M -g-> N -> 0 that N lies in the orbit closure of M.
template <ExactField F>
struct DegenerationCertificate {
    ModulePoint<F> M, N, Z;
    Matrix<F> f;  // (d_Z + d) x d_Z
    Matrix<F> g;  // d x (d_Z + d)
    bool normalized = false;
    std::optional<DualCertificate<F>> dual;

    ModulePoint<F> middle() const { return direct_sum(Z, M); }
    ShortExactCandidate<F> sequence() const { return {Z, middle(), N, f, g}; }

    Matrix<F> f1() const { return f.block(0, 0, Z.dim(), Z.dim()); }
    Matrix<F> f2() const { return f.block(Z.dim(), 0, M.dim(), Z.dim()); }
    Matrix<F> g1() const { return g.block(0, 0, N.dim(), Z.dim()); }
    Matrix<F> g2() const { return g.block(0, Z.dim(), N.dim(), M.dim()); }
};

template <ExactField F>
Report check_certificate_exact(const DegenerationCertificate<F>& c) {
    Report r = check_exact(c.sequence());
    if (c.dual) {
        const auto& d = *c.dual;
        Report rd = check_exact(ShortExactCandidate<F>{c.N, direct_sum(d.T, c.M), d.T, d.f, d.g});
        for (const auto& why : rd.details) r.fail("dual sequence: " + why);
    }
    return r;
}

/// From an invariant subspace U of M: Z = U, f = (0; incl), g = 1_U + proj,
/// N = U + M/U.
template <ExactField F>
DegenerationCertificate<F> certificate_from_submodule(const ModulePoint<F>& M, const Matrix<F>& basis_u) {
    const auto filt = filtration(M, basis_u);
    const std::size_t r = basis_u.cols(), d = M.dim();
    const F& field = M.field();
    DegenerationCertificate<F> c;
    c.M = M;
    c.Z = filt.sub;
    c.N = direct_sum(filt.sub, filt.quotient);
    c.f = vstack(Matrix<F>(field, r, r), basis_u);
    c.g = block_diag(Matrix<F>::identity(field, r), filt.projection);
    if (c.g.rows() != d) throw Error("internal: certificate target has wrong dimension");
    return c;
}

/// Splits off the parts of Z on which f is a section until f is radical.
/// Each round removes the Fitting image of a non-nilpotent composite p*f.
template <ExactField F>
DegenerationCertificate<F> normalize_certificate(DegenerationCertificate<F> c) {
    require_char_zero<F>("certificate normalization");
    if (!check_certificate_exact(c).passed()) throw PreconditionError("normalize needs an exact certificate");
    const F& field = c.M.field();
    for (;;) {
        if (c.Z.dim() == 0) break;
        const auto X = c.middle();
        const auto end = end_algebra(c.Z);
        const auto back = hom_basis(X, c.Z);

        std::optional<Matrix<F>> p, e;
        bool all_radical = true;
        for (const auto& q : back.basis) {
            Matrix<F> qf = q * c.f;
            if (!end.in_radical(qf)) all_radical = false;
            if (!p && !is_nilpotent(qf)) {
                p = q;
                e = std::move(qf);
            }
        }
        if (all_radical) break;
        if (!p) {
            // the left ideal {q f} is not nil, so some combination is not nilpotent
            Rng rng(0xf1771ULL + c.Z.dim());
            for (int trial = 0; trial < 256 && !p; ++trial) {
                std::vector<typename F::Scalar> coef;
                for (std::size_t k = 0; k < back.dim(); ++k) coef.push_back(field.from_int(rng.between(-3, 3)));
                Matrix<F> q = back.combine(coef);
                Matrix<F> qf = q * c.f;
                if (!is_nilpotent(qf)) {
                    p = std::move(q);
                    e = std::move(qf);
                }
            }
            if (!p) throw Error("normalize: no non-nilpotent composite found");
        }

        const auto parts = fitting_split(*e, c.Z);
        const std::size_t ri = parts.image_part.dim();
        const Matrix<F> img = parts.change.block(0, 0, c.Z.dim(), ri);
        const Matrix<F> ker = parts.change.block(0, ri, c.Z.dim(), c.Z.dim() - ri);
        const Matrix<F> pinv = *inverse(parts.change);
        const Matrix<F> onto_img = pinv.block(0, 0, ri, c.Z.dim());
        const Matrix<F> e_img = *solve(img, Matrix<F>(*e * img));
        const Matrix<F> s = c.f * img;                             // Z' -> X, a section
        const Matrix<F> r = *inverse(e_img) * onto_img * (*p);    // X -> Z', r s = 1
        const Matrix<F> kbasis = kernel_matrix(r);
        const auto K = restrict_to(X, kbasis);
        const Matrix<F> to_k = *solve(kbasis, Matrix<F>(Matrix<F>::identity(field, X.dim()) - s * r));

        auto new_z = parts.kernel_part;
        const Matrix<F> f_k = to_k * c.f * ker;
        const Matrix<F> g_k = c.g * kbasis;
        const auto target = direct_sum(new_z, c.M);
        auto phi = find_isomorphism(K, target);
        if (!phi) throw Error("normalize: complement is not isomorphic to Z'' + M");
        c.f = *phi * f_k;
        c.g = g_k * *inverse(*phi);
        c.Z = std::move(new_z);
    }
    c.normalized = true;
    if (!check_certificate_exact(c).passed()) throw Error("normalize produced an inexact certificate");
    return c;
}

/// [M,M] = [M,N] = [N,M] = [N,N] - 1 together with dim O_M - dim O_N = 1.
template <ExactField F>
Report codim1_identities(const ModulePoint<F>& M, const ModulePoint<F>& N) {
    Report r;
    if (M.dim() != N.dim()) {
        r.fail("modules have different dimensions");
        return r;
    }
    const long mm = long(hom_dim(M, M)), mn = long(hom_dim(M, N)), nm = long(hom_dim(N, M)),
               nn = long(hom_dim(N, N));
    const long d2 = long(M.dim() * M.dim());
    r.set("[M,M]", mm);
    r.set("[M,N]", mn);
    r.set("[N,M]", nm);
    r.set("[N,N]", nn);
    r.set("dimO_M", d2 - mm);
    r.set("dimO_N", d2 - nn);
    r.set("codim", nn - mm);
    if (nn - mm != 1) r.fail("codim != 1 (dim O_M - dim O_N = " + std::to_string(nn - mm) + ")");
    if (mn != mm) r.fail("[M,N] != [M,M]");
    if (nm != mm) r.fail("[N,M] != [M,M]");
    if (nn != mm + 1) r.fail("[N,N] != [M,M] + 1");
    return r;
}

/// Verifies [N,Z] = [M,Z] + 1, [Z,M] = [Z,N] and [Z+M,M] = [Z+M,N] on a
/// normalized codimension-one certificate with split indecomposable Z.
template <ExactField F>
Report certify_regularity(const DegenerationCertificate<F>& c) {
    require_char_zero<F>("regularity certification");
    Report r;
    const auto exact = check_certificate_exact(c);
    if (!exact.passed())
        for (const auto& why : exact.details) r.precondition("sequence not exact: " + why);
    if (exact.passed() && !is_radical_hom(c.f, c.Z, c.middle())) r.precondition("f not radical");
    const auto codim = codim1_identities(c.M, c.N);
    for (const auto& [k, v] : codim.values) r.set(k, v);
    if (auto cd = codim.get("codim"); !cd || *cd != 1) r.precondition("codim != 1");
    else if (!codim.passed())
        r.precondition("Hom identities for a codimension-one pair fail");
    const auto zsplit = split_indecomposable(c.Z);
    if (zsplit.verdict != SplitVerdict::Yes)
        r.precondition(std::string("Z not split indecomposable (") + to_string(zsplit.verdict) + ")");

    const long nz = long(hom_dim(c.N, c.Z)), mz = long(hom_dim(c.M, c.Z)), zm = long(hom_dim(c.Z, c.M)),
               zn = long(hom_dim(c.Z, c.N));
    const auto X = c.middle();
    const long xm = long(hom_dim(X, c.M)), xn = long(hom_dim(X, c.N));
    r.set("[N,Z]", nz);
    r.set("[M,Z]", mz);
    r.set("[Z,M]", zm);
    r.set("[Z,N]", zn);
    r.set("[Z+M,M]", xm);
    r.set("[Z+M,N]", xn);
    if (r.status == Status::PreconditionFailure) return r;

    if (nz != mz + 1) r.violation("[N,Z] != [M,Z] + 1");
    if (zm != zn) r.violation("[Z,M] != [Z,N]");
    if (xm != xn) r.violation("[Z+M,M] != [Z+M,N]");
    if (r.status == Status::Pass) r.verdict = "REGULAR-certified";
    return r;
}

/// 0 -> Z -(f~;g~)-> Z+Y -(f~,-h~)-> Z -> 0.
template <ExactField F>
struct SelfExtensionDatum {
    ModulePoint<F> Z, Y;
    Matrix<F> ftilde;  // Z -> Z
    Matrix<F> gtilde;  // Z -> Y
    Matrix<F> htilde;  // Y -> Z

    ShortExactCandidate<F> sequence() const {
        return {Z, direct_sum(Z, Y), Z, vstack(ftilde, gtilde), hstack(ftilde, Matrix<F>(-htilde))};
    }
};

template <ExactField F>
SplitVerdict split_verdict(const ModulePoint<F>& m) {
    if constexpr (F::characteristic_zero)
        return split_indecomposable(m).verdict;
    else
        return split_indecomposable_by_enumeration(m).verdict;
}

/// [Z,Z] - [Y,Y] >= 2 for a nonsplit self-extension datum with Z split
/// indecomposable.
template <ExactField F>
Report theorem2_gap(const SelfExtensionDatum<F>& s) {
    Report r;
    const auto seq = s.sequence();
    const auto exact = check_exact(seq);
    if (!exact.passed())
        for (const auto& why : exact.details) r.precondition("sequence not exact: " + why);
    else if (check_split(seq).split())
        r.precondition("sequence splits");
    if (s.Y.dim() != s.Z.dim()) r.precondition("dim Y != dim Z");
    const auto verdict = split_verdict(s.Z);
    if (verdict != SplitVerdict::Yes)
        r.precondition(std::string("Z not split indecomposable (") + to_string(verdict) + ")");

    const long zz = long(hom_dim(s.Z, s.Z)), yy = long(hom_dim(s.Y, s.Y)), yz = long(hom_dim(s.Y, s.Z)),
               zy = long(hom_dim(s.Z, s.Y));
    r.set("[Z,Z]", zz);
    r.set("[Y,Y]", yy);
    r.set("[Y,Z]", yz);
    r.set("[Z,Y]", zy);
    r.set("gap", zz - yy);
    if (r.status == Status::PreconditionFailure) return r;
    if (zz - yy < 2) r.violation("[Z,Z] - [Y,Y] = " + std::to_string(zz - yy) + " < 2");
    return r;
}

/// x = g~h~ and y = g~f~h~ in End(Y); they commute and satisfy x^3 = y^2.
template <ExactField F>
std::pair<Matrix<F>, Matrix<F>> endo_pair_from_datum(const SelfExtensionDatum<F>& s) {
    if (!check_exact(s.sequence()).passed()) throw PreconditionError("datum sequence is not exact");
    Matrix<F> x = s.gtilde * s.htilde;
    Matrix<F> y = s.gtilde * s.ftilde * s.htilde;
    if (!(x * y == y * x) || !(x.pow(3) == y.pow(2)))
        throw Error("endomorphism pair violates xy = yx or x^3 = y^2");
    require_homomorphism(x, s.Y, s.Y, "x");
    require_homomorphism(y, s.Y, s.Y, "y");
    return {std::move(x), std::move(y)};
}

template <ExactField F>
struct Equivalence {
    Matrix<F> i;  // Z1 -> Z2
    Matrix<F> j;  // Z1+M -> Z2+M
};

/// Searches isomorphisms i, j with j f1 = f2 i and g2 j = g1.
template <ExactField F>
std::optional<Equivalence<F>> find_equivalence(const DegenerationCertificate<F>& c1,
                                               const DegenerationCertificate<F>& c2) {
    const F& field = c1.M.field();
    const auto X1 = c1.middle(), X2 = c2.middle();
    const auto hi = hom_basis(c1.Z, c2.Z);
    const auto hj = hom_basis(X1, X2);
    const std::size_t n_eq1 = X2.dim() * c1.Z.dim(), n_eq2 = c1.N.dim() * X1.dim();
    const std::size_t unknowns = hi.dim() + hj.dim();
    if (unknowns == 0) return std::nullopt;
    Matrix<F> sys(field, n_eq1 + n_eq2, unknowns);
    for (std::size_t a = 0; a < hi.dim(); ++a) sys.set_block(0, a, vectorize(Matrix<F>(-(c2.f * hi.basis[a]))));
    for (std::size_t b = 0; b < hj.dim(); ++b) {
        sys.set_block(0, hi.dim() + b, vectorize(Matrix<F>(hj.basis[b] * c1.f)));
        sys.set_block(n_eq1, hi.dim() + b, vectorize(Matrix<F>(c2.g * hj.basis[b])));
    }
    Matrix<F> rhs(field, n_eq1 + n_eq2, 1);
    rhs.set_block(n_eq1, 0, vectorize(c1.g));
    const auto particular = solve(sys, rhs);
    if (!particular) return std::nullopt;
    const auto null = kernel_matrix(sys);
    using S = typename F::Scalar;
    auto build = [&](const std::vector<S>& t) {
        Matrix<F> x = *particular;
        for (std::size_t k = 0; k < null.cols(); ++k)
            if (!F::is_zero(t[k])) x += t[k] * null.column(k);
        std::vector<S> ci, cj;
        for (std::size_t a = 0; a < hi.dim(); ++a) ci.push_back(x(a, 0));
        for (std::size_t b = 0; b < hj.dim(); ++b) cj.push_back(x(hi.dim() + b, 0));
        return Equivalence<F>{hi.combine(ci), hj.combine(cj)};
    };
    auto accept = [](const Equivalence<F>& e) { return is_invertible(e.i) && is_invertible(e.j); };
    // the particular solution itself is tried first
    auto first = build(std::vector<S>(null.cols(), field.zero()));
    if (accept(first)) return first;
    return search_affine_family<F, Equivalence<F>>(field, null.cols(), 2 * X1.dim() * (null.cols() + 1),
                                                   0xe9ULL, build, accept);
}

/// Two normalized certificates for the same codimension-one pair are
/// equivalent: Z1 ~ Z2 and the connecting isomorphisms exist.
template <ExactField F>
Report uniqueness_check(const DegenerationCertificate<F>& c1, const DegenerationCertificate<F>& c2) {
    Report r;
    if (!(c1.M.dim() == c2.M.dim()) || !(c1.N.dim() == c2.N.dim()) || !(c1.M.mats() == c2.M.mats()) ||
        !(c1.N.mats() == c2.N.mats())) {
        r.precondition("certificates are for different M, N");
        return r;
    }
    for (const auto* c : {&c1, &c2}) {
        const auto reg = certify_regularity(*c);
        if (reg.status == Status::PreconditionFailure)
            for (const auto& why : reg.details) r.precondition(why);
    }
    if (r.status == Status::PreconditionFailure) return r;
    const bool z_iso = is_isomorphic(c1.Z, c2.Z);
    r.set("Z1~Z2", z_iso ? 1 : 0);
    if (!z_iso) {
        r.violation("Z1 and Z2 are not isomorphic");
        return r;
    }
    const auto eq = find_equivalence(c1, c2);
    r.set("equivalence_found", eq ? 1 : 0);
    if (!eq) r.violation("no equivalence diagram between the certificates");
    else r.verdict = "EQUIVALENT";
    return r;
}

}  // namespace orbitcert
