#pragma once

// Finite-dimensional modules and bimodules over the cusp ring
// R = k[m^2, m^3] = k[x, y]/(x^3 - y^2), given by the action matrices of m^2
// (A) and m^3 (B). m^4 always acts as A^2.
//
// [P1]  : M+M -Xi-> M+M -Xi-> M+M exact, Xi = [[B, -A], [A^2, -B]].
// [P1'] : the same on row pairs with the right action.
// [P2]  : N -xi*eta-> N -(xi;eta)-> N+N exact on N = M^(2x2).
// Since Xi^2 = 0 and xi^2 = eta^2 = 0, xi*eta = eta*xi, each property
// reduces to a rank identity.

#include "endalg.hpp"
#include "report.hpp"

#include <string>
#include <vector>

namespace orbitcert {

enum class Side { Left, Right };

template <ExactField F>
struct CuspModule {
    std::size_t dim = 0;
    Matrix<F> A;  // m^2
    Matrix<F> B;  // m^3
    Side side = Side::Left;
};

template <ExactField F>
struct CuspBimodule {
    std::size_t dim = 0;
    Matrix<F> LA, LB;  // left m^2, m^3
    Matrix<F> RA, RB;  // right m^2, m^3

    CuspModule<F> left() const { return {dim, LA, LB, Side::Left}; }
    CuspModule<F> right() const { return {dim, RA, RB, Side::Right}; }
};

struct InvalidCuspModule : Error {
    using Error::Error;
};

template <ExactField F>
std::string cusp_violation(const Matrix<F>& a, const Matrix<F>& b, std::size_t dim) {
    if (a.rows() != dim || a.cols() != dim || b.rows() != dim || b.cols() != dim) return "action shape mismatch";
    if (!(a * b == b * a)) return "AB != BA";
    if (!(a.pow(3) == b.pow(2))) return "A^3 != B^2";
    return {};
}

template <ExactField F>
void validate_cusp(const CuspModule<F>& m) {
    if (auto why = cusp_violation(m.A, m.B, m.dim); !why.empty()) throw InvalidCuspModule(why);
}

template <ExactField F>
void validate_cusp(const CuspBimodule<F>& b) {
    if (auto why = cusp_violation(b.LA, b.LB, b.dim); !why.empty()) throw InvalidCuspModule("left: " + why);
    if (auto why = cusp_violation(b.RA, b.RB, b.dim); !why.empty()) throw InvalidCuspModule("right: " + why);
    for (const auto* l : {&b.LA, &b.LB})
        for (const auto* r : {&b.RA, &b.RB})
            if (!(*l * *r == *r * *l)) throw InvalidCuspModule("left and right actions do not commute");
}

template <ExactField F>
bool is_valid_cusp(const CuspBimodule<F>& b) {
    try {
        validate_cusp(b);
        return true;
    } catch (const InvalidCuspModule&) {
        return false;
    }
}

/// [[b, -a], [a^2, -b]] acting on stacked pairs.
template <ExactField F>
Matrix<F> xi_block(const Matrix<F>& a, const Matrix<F>& b) {
    const std::size_t n = a.rows();
    Matrix<F> x(a.field(), 2 * n, 2 * n);
    x.set_block(0, 0, b);
    x.set_block(0, n, -a);
    x.set_block(n, 0, a * a);
    x.set_block(n, n, -b);
    return x;
}

/// Xi on M+M for a left module.
template <ExactField F>
Matrix<F> xi_operator(const CuspModule<F>& m) {
    return xi_block(m.A, m.B);
}

template <ExactField F>
bool check_p1(const CuspModule<F>& m) {
    if (m.side != Side::Left) throw PreconditionError("[P1] is a property of left modules");
    validate_cusp(m);
    return rank(xi_operator(m)) == m.dim;
}

/// Row pairs (u, v) times [[m^3, m^4], [-m^2, -m^3]] = (u m^3 - v m^2, u m^4 - v m^3);
/// in coordinates this is again the [[B, -A], [A^2, -B]] pattern, built from
/// the right action.
template <ExactField F>
bool check_p1prime(const CuspModule<F>& m) {
    if (m.side != Side::Right) throw PreconditionError("[P1'] is a property of right modules");
    validate_cusp(m);
    const std::size_t n = m.dim;
    Matrix<F> op(m.A.field(), 2 * n, 2 * n);
    op.set_block(0, 0, m.B);
    op.set_block(0, n, -m.A);
    op.set_block(n, 0, m.A * m.A);
    op.set_block(n, n, -m.B);
    return rank(op) == n;
}

/// xi and eta on N = M^(2x2), coordinates ordered (x11, x12, x21, x22).
template <ExactField F>
struct BigN {
    Matrix<F> xi;
    Matrix<F> eta;
};

template <ExactField F>
BigN<F> big_n_operators(const CuspBimodule<F>& b) {
    const std::size_t n = b.dim;
    const F& field = b.LA.field();
    auto at = [n](std::size_t p, std::size_t q) { return (2 * p + q) * n; };
    const Matrix<F> la2 = b.LA * b.LA, ra2 = b.RA * b.RA;
    Matrix<F> xi(field, 4 * n, 4 * n), eta(field, 4 * n, 4 * n);
    for (std::size_t q = 0; q < 2; ++q) {
        // (xi X)_1q = m^3 x_1q - m^2 x_2q ; (xi X)_2q = m^4 x_1q - m^3 x_2q
        xi.set_block(at(0, q), at(0, q), b.LB);
        xi.set_block(at(0, q), at(1, q), -b.LA);
        xi.set_block(at(1, q), at(0, q), la2);
        xi.set_block(at(1, q), at(1, q), -b.LB);
    }
    for (std::size_t p = 0; p < 2; ++p) {
        // (eta X)_p1 = x_p1 m^3 - x_p2 m^2 ; (eta X)_p2 = x_p1 m^4 - x_p2 m^3
        eta.set_block(at(p, 0), at(p, 0), b.RB);
        eta.set_block(at(p, 0), at(p, 1), -b.RA);
        eta.set_block(at(p, 1), at(p, 0), ra2);
        eta.set_block(at(p, 1), at(p, 1), -b.RB);
    }
    return {std::move(xi), std::move(eta)};
}

/// ker xi ∩ ker eta = im(xi eta).
template <ExactField F>
bool check_p2(const CuspBimodule<F>& b) {
    validate_cusp(b);
    const auto [xi, eta] = big_n_operators(b);
    const Matrix<F> both = vstack(xi, eta);
    const Matrix<F> xe = xi * eta;
    if (!(both * xe).is_zero()) throw Error("im(xi eta) not inside ker xi ∩ ker eta");
    return rank(xe) == 4 * b.dim - rank(both);
}

/// Exactness of N+N -(xi eta)-> N -(xi eta)-> N -(xi;eta)-> N+N -> N+N+N at
/// its three interior terms, plus [P1] and [P1'] for the two sides.
template <ExactField F>
Report check_long_n(const CuspBimodule<F>& b) {
    Report r;
    if (!check_p2(b)) {
        r.precondition("bimodule does not have [P2]");
        return r;
    }
    const auto [xi, eta] = big_n_operators(b);
    const std::size_t n = 4 * b.dim;
    const F& field = b.LA.field();
    const Matrix<F> row = hstack(xi, eta);
    const Matrix<F> xe = xi * eta;
    const Matrix<F> col = vstack(xi, eta);
    Matrix<F> big(field, 3 * n, 2 * n);
    big.set_block(0, 0, xi);
    big.set_block(n, 0, eta);
    big.set_block(n, n, -xi);
    big.set_block(2 * n, n, eta);

    const auto r_row = rank(row), r_xe = rank(xe), r_col = rank(col), r_big = rank(big);
    r.set("rank(xi,eta)", long(r_row));
    r.set("rank(xi*eta)", long(r_xe));
    r.set("rank(xi;eta)", long(r_col));
    r.set("rank(last)", long(r_big));
    if (!(xe * row).is_zero() || !(big * col).is_zero()) throw Error("sequence (xi,eta) composites are nonzero");
    const bool at1 = r_row == n - r_xe, at2 = r_xe == n - r_col, at3 = r_col == 2 * n - r_big;
    const bool p1 = check_p1(b.left()), p1r = check_p1prime(b.right());
    r.set("exact_at_first_N", at1);
    r.set("exact_at_second_N", at2);
    r.set("exact_at_N+N", at3);
    r.set("P1_left", p1);
    r.set("P1'_right", p1r);
    if (!(at1 && at2 && at3 && p1 && p1r))
        r.violation("[P2] holds but the long sequence or [P1]/[P1'] fails");
    return r;
}

/// Quotient of a bimodule by the sub-bimodule spanned by the columns of `embed`.
template <ExactField F>
CuspBimodule<F> quotient_bimodule(const CuspBimodule<F>& total, const Matrix<F>& embed) {
    const std::size_t d = total.dim, r = embed.cols();
    const Matrix<F> p = hstack(embed, complete_basis(embed));
    const Matrix<F> pinv = *inverse(p);
    auto q = [&](const Matrix<F>& a) { return Matrix<F>(pinv * a * p).block(r, r, d - r, d - r); };
    return {d - r, q(total.LA), q(total.LB), q(total.RA), q(total.RB)};
}

/// [P2] is two-out-of-three in 0 -> sub -> total -> total/sub -> 0.
template <ExactField F>
Report two_of_three(const CuspBimodule<F>& sub, const CuspBimodule<F>& total, const Matrix<F>& embed) {
    validate_cusp(sub);
    validate_cusp(total);
    if (embed.rows() != total.dim || embed.cols() != sub.dim || rank(embed) != sub.dim)
        throw PreconditionError("embedding is not injective");
    if (!(embed * sub.LA == total.LA * embed) || !(embed * sub.LB == total.LB * embed) ||
        !(embed * sub.RA == total.RA * embed) || !(embed * sub.RB == total.RB * embed))
        throw PreconditionError("embedding does not intertwine the actions");
    const auto quo = quotient_bimodule(total, embed);
    const bool ps = check_p2(sub), pt = check_p2(total), pq = check_p2(quo);
    Report r;
    r.set("P2_sub", ps);
    r.set("P2_total", pt);
    r.set("P2_quotient", pq);
    if (int(ps) + int(pt) + int(pq) == 2) r.violation("exactly one of the three bimodules lacks [P2]");
    return r;
}

/// End_A(Y) as an R-R-bimodule: m^2, m^3 act on the left by post-composition
/// with x, y and on the right by pre-composition. Coordinates are those of
/// the canonical Hom basis.
template <ExactField F>
CuspBimodule<F> endo_bimodule(const ModulePoint<F>& Y, const Matrix<F>& x, const Matrix<F>& y) {
    require_homomorphism(x, Y, Y, "x");
    require_homomorphism(y, Y, Y, "y");
    if (!(x * y == y * x) || !(x.pow(3) == y.pow(2))) throw InvalidCuspModule("x, y violate xy = yx or x^3 = y^2");
    const auto space = hom_basis(Y, Y);
    const std::size_t n = space.dim();
    const F& field = Y.field();
    CuspBimodule<F> b{n, Matrix<F>(field, n, n), Matrix<F>(field, n, n), Matrix<F>(field, n, n),
                      Matrix<F>(field, n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        const auto& phi = space.basis[j];
        const std::pair<Matrix<F>*, Matrix<F>> images[] = {
            {&b.LA, x * phi}, {&b.LB, y * phi}, {&b.RA, phi * x}, {&b.RB, phi * y}};
        for (const auto& [target, img] : images) {
            const auto c = space.coordinates(img);
            if (!c) throw Error("composition left End(Y)");
            for (std::size_t i = 0; i < n; ++i) (*target)(i, j) = (*c)[i];
        }
    }
    validate_cusp(b);
    return b;
}

}  // namespace orbitcert
