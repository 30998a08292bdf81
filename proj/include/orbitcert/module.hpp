#pragma once

// Finitely presented algebras A = k<X_1..X_t>/I and their module points
// (t-tuples of d x d matrices annihilated by every relation).

#include "linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace orbitcert {

struct AlgebraMismatch : Error {
    using Error::Error;
};

/// Noncommutative monomial X_{w[0]} X_{w[1]} ... ; the empty word is 1.
using Word = std::vector<std::size_t>;

template <ExactField F>
struct Term {
    typename F::Scalar coef;
    Word word;
};

template <ExactField F>
using Relation = std::vector<Term<F>>;

template <ExactField F>
struct AlgebraPresentation {
    F field{};
    std::size_t generators = 0;
    std::vector<Relation<F>> relations;
    std::vector<std::string> names;  // optional generator labels

    AlgebraPresentation() = default;
    AlgebraPresentation(const F& fld, std::size_t t, std::vector<Relation<F>> rels = {},
                        std::vector<std::string> labels = {})
        : field(fld), generators(t), relations(std::move(rels)), names(std::move(labels)) {
        for (const auto& rel : relations)
            for (const auto& term : rel)
                for (auto g : term.word)
                    if (g >= generators)
                        throw Error("relation uses generator index " + std::to_string(g) +
                                    " but the algebra has " + std::to_string(generators));
        if (!names.empty() && names.size() != generators)
            throw Error("generator label count does not match generator count");
    }

    bool operator==(const AlgebraPresentation& o) const {
        if (field != o.field || generators != o.generators || relations.size() != o.relations.size())
            return false;
        for (std::size_t i = 0; i < relations.size(); ++i) {
            if (relations[i].size() != o.relations[i].size()) return false;
            for (std::size_t j = 0; j < relations[i].size(); ++j)
                if (!(relations[i][j].coef == o.relations[i][j].coef) ||
                    relations[i][j].word != o.relations[i][j].word)
                    return false;
        }
        return true;
    }
};

template <ExactField F>
using AlgebraRef = std::shared_ptr<const AlgebraPresentation<F>>;

template <ExactField F>
AlgebraRef<F> free_algebra(const F& field, std::size_t t) {
    return std::make_shared<const AlgebraPresentation<F>>(field, t);
}

template <ExactField F>
Matrix<F> evaluate_word(const Word& w, const std::vector<Matrix<F>>& mats, const F& field, std::size_t d) {
    Matrix<F> acc = Matrix<F>::identity(field, d);
    for (auto g : w) acc = acc * mats[g];
    return acc;
}

template <ExactField F>
Matrix<F> evaluate_relation(const Relation<F>& rel, const std::vector<Matrix<F>>& mats, const F& field,
                            std::size_t d) {
    Matrix<F> acc(field, d, d);
    for (const auto& term : rel) acc += term.coef * evaluate_word(term.word, mats, field, d);
    return acc;
}

/// A point of mod_A^d(k). Shapes are enforced on construction; whether the
/// relations vanish is reported by `validate`.
template <ExactField F>
class ModulePoint {
public:
    using Mat = Matrix<F>;

    ModulePoint() = default;
    ModulePoint(AlgebraRef<F> algebra, std::size_t d, std::vector<Mat> mats)
        : algebra_(std::move(algebra)), d_(d), mats_(std::move(mats)) {
        if (!algebra_) throw Error("module without algebra");
        if (mats_.size() != algebra_->generators)
            throw DimensionMismatch("module has " + std::to_string(mats_.size()) +
                                    " matrices but the algebra has " +
                                    std::to_string(algebra_->generators) + " generators");
        for (const auto& m : mats_)
            if (m.rows() != d_ || m.cols() != d_)
                throw DimensionMismatch("module matrix " + m.shape() + " in dimension " + std::to_string(d_));
    }

    static ModulePoint zero(AlgebraRef<F> algebra) {
        std::vector<Mat> mats(algebra->generators, Mat(algebra->field, 0, 0));
        return ModulePoint(std::move(algebra), 0, std::move(mats));
    }

    const AlgebraRef<F>& algebra() const { return algebra_; }
    const F& field() const { return algebra_->field; }
    std::size_t dim() const { return d_; }
    std::size_t generators() const { return mats_.size(); }
    const std::vector<Mat>& mats() const { return mats_; }
    const Mat& action(std::size_t i) const { return mats_.at(i); }

    bool same_algebra(const ModulePoint& o) const {
        return algebra_ == o.algebra_ || *algebra_ == *o.algebra_;
    }

    /// g * (m_1..m_t) = (g m_1 g^-1, ..., g m_t g^-1).
    ModulePoint conjugate(const Mat& g) const {
        auto gi = inverse(g);
        if (!gi) throw Error("conjugating by a singular matrix");
        std::vector<Mat> out;
        out.reserve(mats_.size());
        for (const auto& m : mats_) out.push_back(g * m * *gi);
        return ModulePoint(algebra_, d_, std::move(out));
    }

private:
    AlgebraRef<F> algebra_;
    std::size_t d_ = 0;
    std::vector<Mat> mats_;
};

struct ValidationReport {
    bool pass = true;
    std::optional<std::size_t> failing_relation;
    std::string detail;
};

template <ExactField F>
ValidationReport validate_module(const ModulePoint<F>& m) {
    const auto& alg = *m.algebra();
    for (std::size_t r = 0; r < alg.relations.size(); ++r)
        if (!evaluate_relation(alg.relations[r], m.mats(), m.field(), m.dim()).is_zero())
            return {false, r, "relation " + std::to_string(r) + " does not vanish"};
    return {};
}

template <ExactField F>
void require_same_algebra(const ModulePoint<F>& a, const ModulePoint<F>& b) {
    if (!a.same_algebra(b)) throw AlgebraMismatch("modules over different algebras");
}

template <ExactField F>
ModulePoint<F> direct_sum(const ModulePoint<F>& a, const ModulePoint<F>& b) {
    require_same_algebra(a, b);
    std::vector<Matrix<F>> mats;
    for (std::size_t i = 0; i < a.generators(); ++i) mats.push_back(block_diag(a.action(i), b.action(i)));
    return ModulePoint<F>(a.algebra(), a.dim() + b.dim(), std::move(mats));
}

struct NotInvariant : Error {
    std::size_t generator;
    NotInvariant(std::size_t g)
        : Error("subspace is not invariant under generator " + std::to_string(g)), generator(g) {}
};

/// Split a module along an invariant subspace spanned by the columns of
/// `basis` (independent). With P = [basis | complement], P^-1 m P is block
/// upper triangular; the diagonal blocks are the submodule and the quotient.
template <ExactField F>
struct Filtration {
    ModulePoint<F> sub;
    ModulePoint<F> quotient;
    Matrix<F> change;      // P
    Matrix<F> projection;  // last d - r rows of P^-1: the quotient map
};

template <ExactField F>
Filtration<F> filtration(const ModulePoint<F>& m, const Matrix<F>& basis) {
    if (basis.rows() != m.dim()) throw DimensionMismatch("subspace basis has wrong ambient dimension");
    if (rank(basis) != basis.cols()) throw Error("subspace basis columns are dependent");
    for (std::size_t i = 0; i < m.generators(); ++i)
        if (!in_span(basis, m.action(i) * basis)) throw NotInvariant(i);
    const std::size_t d = m.dim(), r = basis.cols();
    Matrix<F> p = hstack(basis, complete_basis(basis));
    Matrix<F> pinv = *inverse(p);
    std::vector<Matrix<F>> sub, quo;
    for (const auto& a : m.mats()) {
        Matrix<F> c = pinv * a * p;
        sub.push_back(c.block(0, 0, r, r));
        quo.push_back(c.block(r, r, d - r, d - r));
    }
    return {ModulePoint<F>(m.algebra(), r, std::move(sub)), ModulePoint<F>(m.algebra(), d - r, std::move(quo)),
            p, pinv.block(r, 0, d - r, d)};
}

/// Action on an invariant subspace in the coordinates of `basis`.
template <ExactField F>
ModulePoint<F> restrict_to(const ModulePoint<F>& m, const Matrix<F>& basis) {
    std::vector<Matrix<F>> mats;
    for (std::size_t i = 0; i < m.generators(); ++i) {
        auto x = solve(basis, m.action(i) * basis);
        if (!x) throw NotInvariant(i);
        mats.push_back(std::move(*x));
    }
    return ModulePoint<F>(m.algebra(), basis.cols(), std::move(mats));
}

}  // namespace orbitcert
