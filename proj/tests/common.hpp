#pragma once

// Shared inputs for the test binaries: the sharp-gap example over
// k<a,b>/(a^2, b^2, ab - ba) and the Kronecker scenario.

#include "orbitcert/orbitcert.hpp"

namespace fixtures {

using namespace orbitcert;
using MQ = Matrix<RationalField>;

inline const RationalField Q;

template <ExactField F = RationalField>
AlgebraRef<F> commuting_square_zero(const F& field = F{}) {
    const auto one = field.one(), minus = field.from_int(-1);
    std::vector<Relation<F>> rels = {
        {{one, {0, 0}}},
        {{one, {1, 1}}},
        {{one, {0, 1}}, {minus, {1, 0}}},
    };
    return std::make_shared<const AlgebraPresentation<F>>(field, 2, rels, std::vector<std::string>{"alpha", "beta"});
}

template <ExactField F = RationalField>
SelfExtensionDatum<F> sharp_gap_datum(const F& field = F{}) {
    using M = Matrix<F>;
    const auto alg = commuting_square_zero(field);
    const M ya(field, {{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
    const M yb(field, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}});
    const M za = ya;
    const M zb(field, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}});
    const M f(field, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    const M g(field, {{0, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}});
    const M h(field, {{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}});
    return {ModulePoint<F>(alg, 4, {za, zb}), ModulePoint<F>(alg, 4, {ya, yb}), f, g, h};
}

/// Generators e1, e2, a, b with the path-algebra relations of the Kronecker quiver.
inline AlgebraRef<RationalField> kronecker_algebra() {
    const auto one = Q.one(), minus = Q.from_int(-1);
    std::vector<Relation<RationalField>> rels = {
        {{one, {0, 0}}, {minus, {0}}},
        {{one, {1, 1}}, {minus, {1}}},
        {{one, {0, 1}}},
        {{one, {1, 0}}},
        {{one, {0}}, {one, {1}}, {minus, {}}},
        {{one, {2}}, {minus, {2, 0}}},
        {{one, {2}}, {minus, {1, 2}}},
        {{one, {3}}, {minus, {3, 0}}},
        {{one, {3}}, {minus, {1, 3}}},
    };
    return std::make_shared<const AlgebraPresentation<RationalField>>(Q, 4, rels,
                                                                      std::vector<std::string>{"e1", "e2", "a", "b"});
}

struct Kronecker {
    AlgebraRef<RationalField> alg = kronecker_algebra();
    ModulePoint<RationalField> M{alg, 2, {MQ(Q, {{1, 0}, {0, 0}}), MQ(Q, {{0, 0}, {0, 1}}), MQ(Q, {{0, 0}, {1, 0}}), MQ(Q, 2, 2)}};
    ModulePoint<RationalField> N{alg, 2, {MQ(Q, {{1, 0}, {0, 0}}), MQ(Q, {{0, 0}, {0, 1}}), MQ(Q, 2, 2), MQ(Q, 2, 2)}};
    ModulePoint<RationalField> S2{alg, 1, {MQ(Q, {{0}}), MQ(Q, {{1}}), MQ(Q, {{0}}), MQ(Q, {{0}})}};
    ModulePoint<RationalField> S1{alg, 1, {MQ(Q, {{1}}), MQ(Q, {{0}}), MQ(Q, {{0}}), MQ(Q, {{0}})}};
    MQ socle = MQ(Q, {{0}, {1}});  // S2 -> M
};

/// Hom dimension through column-major vectorization:
/// vec(phi m - n phi) = (m^T (x) I - I (x) n) vec(phi). Independent of the
/// library's row-major commutation system.
template <ExactField F>
std::size_t hom_dim_oracle(const ModulePoint<F>& m, const ModulePoint<F>& n) {
    const F& field = m.field();
    const std::size_t dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return 0;
    Matrix<F> sys(field, 0, dm * dn);
    for (std::size_t i = 0; i < m.generators(); ++i) {
        Matrix<F> block = kron(m.action(i).transpose(), Matrix<F>::identity(field, dn)) -
                          kron(Matrix<F>::identity(field, dm), n.action(i));
        sys = vstack(sys, block);
    }
    return dm * dn - rank(sys);
}

}  // namespace fixtures
