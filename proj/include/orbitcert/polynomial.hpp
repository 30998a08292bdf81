#pragma once

// Univariate polynomials over Q, only as much as the indecomposability
// search needs: characteristic polynomials, gcd, squarefree parts and
// rational roots.

#include "linalg.hpp"

#include <algorithm>
#include <vector>

namespace orbitcert::poly {

using Q = mpq_class;
using Poly = std::vector<Q>;  // coefficients, lowest degree first

inline void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const Poly& p) { return int(p.size()) - 1; }

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Q(p[i] * long(i)));
    trim(d);
    return d;
}

inline Poly make_monic(Poly p) {
    trim(p);
    if (p.empty()) return p;
    const Q lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

/// Quotient and remainder of a / b (b nonzero).
inline std::pair<Poly, Poly> divmod(Poly a, Poly b) {
    trim(a);
    trim(b);
    if (b.empty()) throw Error("polynomial division by zero");
    if (a.size() < b.size()) return {Poly{}, a};
    Poly q(a.size() - b.size() + 1);
    for (int i = degree(a); i >= degree(b); --i) {
        const Q c = a[std::size_t(i)] / b.back();
        q[std::size_t(i - degree(b))] = c;
        for (int j = 0; j <= degree(b); ++j) a[std::size_t(i - degree(b) + j)] -= c * b[std::size_t(j)];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

inline Poly subtract(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

/// Characteristic polynomial det(tI - A) by Faddeev-LeVerrier (char 0 only).
inline Poly charpoly(const Matrix<RationalField>& a) {
    const std::size_t n = a.rows();
    Poly c(n + 1);
    c[n] = 1;
    const RationalField f;
    auto m = Matrix<RationalField>::identity(f, n);
    for (std::size_t k = 1; k <= n; ++k) {
        auto am = a * m;
        c[n - k] = -am.trace() / Q(long(k));
        m = am;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k];
    }
    return c;
}

/// Yun's squarefree decomposition: pairwise coprime monic factors, one per
/// multiplicity that occurs.
inline std::vector<Poly> squarefree_parts(const Poly& f) {
    std::vector<Poly> parts;
    Poly p = make_monic(f);
    if (degree(p) < 1) return parts;
    Poly a0 = gcd(p, derivative(p));
    Poly b = divmod(p, a0).first;
    Poly c = divmod(derivative(p), a0).first;
    Poly d = subtract(c, derivative(b));
    while (degree(b) >= 1) {
        Poly a = gcd(b, d);
        if (degree(a) >= 1) parts.push_back(a);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = subtract(c, derivative(b));
    }
    return parts;
}

/// Rational roots, by the rational root test. Gives up (returns what it has)
/// when the integer coefficients are too large to factor by trial division.
inline std::vector<Q> rational_roots(Poly f) {
    std::vector<Q> roots;
    trim(f);
    if (degree(f) < 1) return roots;
    std::size_t shift = 0;
    while (sgn(f[shift]) == 0) ++shift;
    if (shift) roots.push_back(Q(0));
    f.erase(f.begin(), f.begin() + long(shift));
    if (degree(f) < 1) return roots;
    mpz_class den = 1;
    for (const auto& c : f) den = lcm(den, mpz_class(c.get_den()));
    std::vector<mpz_class> ints;
    for (const auto& c : f) ints.push_back(mpz_class(c * den));
    auto divisors = [](mpz_class v) {
        std::vector<mpz_class> ds;
        v = abs(v);
        if (v > mpz_class("1000000000000")) return ds;
        for (mpz_class i = 1; i * i <= v; ++i)
            if (v % i == 0) {
                ds.push_back(i);
                if (i * i != v) ds.push_back(v / i);
            }
        return ds;
    };
    const auto ps = divisors(ints.front());
    const auto qs = divisors(ints.back());
    auto eval = [&](const Q& x) {
        Q acc = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    for (const auto& p : ps)
        for (const auto& q : qs)
            for (int s : {1, -1}) {
                Q cand(s * p, q);
                cand.canonicalize();
                if (sgn(eval(cand)) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// p(A) by Horner's rule.
inline Matrix<RationalField> evaluate(const Poly& p, const Matrix<RationalField>& a) {
    const RationalField f;
    Matrix<RationalField> acc(f, a.rows(), a.cols());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * a;
        for (std::size_t i = 0; i < a.rows(); ++i) acc(i, i) += *it;
    }
    return acc;
}

}  // namespace orbitcert::poly
