#pragma once

#include "module.hpp"

#include <optional>
#include <vector>

namespace orbitcert {

struct NotAHomomorphism : Error {
    using Error::Error;
};

/// Basis of Hom_A(source, target), each element a (d_target x d_source)
/// matrix. The basis comes from the canonical kernel basis of the commutation
/// system, so the coordinates of any hom are its entries at `free_positions`.
template <ExactField F>
struct HomSpace {
    ModulePoint<F> source;
    ModulePoint<F> target;
    std::vector<Matrix<F>> basis;
    std::vector<std::size_t> free_positions;  // row-major indices into the hom matrix

    std::size_t dim() const { return basis.size(); }

    /// Coordinates of `phi` in `basis`; nullopt if phi is not in the span.
    std::optional<std::vector<typename F::Scalar>> coordinates(const Matrix<F>& phi) const {
        const std::size_t cols = source.dim();
        std::vector<typename F::Scalar> c;
        c.reserve(basis.size());
        Matrix<F> rebuilt(phi.field(), target.dim(), source.dim());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const auto pos = free_positions[k];
            c.push_back(phi(pos / cols, pos % cols));
            if (!F::is_zero(c.back())) rebuilt += c.back() * basis[k];
        }
        if (!(rebuilt == phi)) return std::nullopt;
        return c;
    }

    Matrix<F> combine(const std::vector<typename F::Scalar>& coef) const {
        Matrix<F> out(source.field(), target.dim(), source.dim());
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!F::is_zero(coef[k])) out += coef[k] * basis[k];
        return out;
    }
};

/// Linear system whose kernel is Hom(m, n): one block of d_n*d_m equations
/// per generator expressing phi*m_i - n_i*phi = 0.
template <ExactField F>
Matrix<F> commutation_system(const ModulePoint<F>& m, const ModulePoint<F>& n) {
    const std::size_t dm = m.dim(), dn = n.dim(), t = m.generators();
    Matrix<F> sys(m.field(), t * dn * dm, dn * dm);
    for (std::size_t i = 0; i < t; ++i) {
        const auto& mi = m.action(i);
        const auto& ni = n.action(i);
        for (std::size_t r = 0; r < dn; ++r)
            for (std::size_t c = 0; c < dm; ++c) {
                const std::size_t row = (i * dn + r) * dm + c;
                for (std::size_t k = 0; k < dm; ++k)
                    if (!F::is_zero(mi(k, c))) sys(row, r * dm + k) += mi(k, c);
                for (std::size_t k = 0; k < dn; ++k)
                    if (!F::is_zero(ni(r, k))) sys(row, k * dm + c) -= ni(r, k);
            }
    }
    return sys;
}

template <ExactField F>
HomSpace<F> hom_basis(const ModulePoint<F>& m, const ModulePoint<F>& n) {
    require_same_algebra(m, n);
    HomSpace<F> hs{m, n, {}, {}};
    const std::size_t dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return hs;
    const auto sys = commutation_system(m, n);
    const auto ech = rref(sys);
    std::vector<bool> is_pivot(dn * dm, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    for (std::size_t j = 0; j < dn * dm; ++j) {
        if (is_pivot[j]) continue;
        Matrix<F> phi(m.field(), dn, dm);
        phi(j / dm, j % dm) = m.field().one();
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            if (!F::is_zero(ech.reduced(i, j))) {
                const auto p = ech.pivots[i];
                phi(p / dm, p % dm) = -ech.reduced(i, j);
            }
        hs.basis.push_back(std::move(phi));
        hs.free_positions.push_back(j);
    }
    return hs;
}

/// [m, n] = dim_k Hom_A(m, n).
template <ExactField F>
std::size_t hom_dim(const ModulePoint<F>& m, const ModulePoint<F>& n) {
    require_same_algebra(m, n);
    if (m.dim() == 0 || n.dim() == 0) return 0;
    return m.dim() * n.dim() - rank(commutation_system(m, n));
}

/// dim O_M = dim GL_d - [M, M].
template <ExactField F>
std::size_t orbit_dim(const ModulePoint<F>& m) {
    return m.dim() * m.dim() - hom_dim(m, m);
}

template <ExactField F>
bool is_homomorphism(const Matrix<F>& phi, const ModulePoint<F>& m, const ModulePoint<F>& n) {
    if (phi.rows() != n.dim() || phi.cols() != m.dim()) return false;
    for (std::size_t i = 0; i < m.generators(); ++i)
        if (!(phi * m.action(i) == n.action(i) * phi)) return false;
    return true;
}

template <ExactField F>
void require_homomorphism(const Matrix<F>& phi, const ModulePoint<F>& m, const ModulePoint<F>& n,
                          const std::string& what) {
    if (!is_homomorphism(phi, m, n))
        throw NotAHomomorphism(what + " (" + phi.shape() + ") is not a module homomorphism");
}

}  // namespace orbitcert
