#pragma once

// Independent oracles and bounded searches: the Jordan-form Hom formula and a
// seeded search for nonsplit self-extension data over small prime fields.

#include "degen.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace orbitcert {

/// Weakly decreasing positive parts.
struct Partition {
    std::vector<unsigned> parts;

    unsigned size() const {
        unsigned s = 0;
        for (auto p : parts) s += p;
        return s;
    }
    bool valid() const {
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (parts[i] == 0 || (i && parts[i] > parts[i - 1])) return false;
        return true;
    }
    bool operator==(const Partition&) const = default;
};

/// All partitions of n in reverse lexicographic order.
inline std::vector<Partition> partitions(unsigned n) {
    std::vector<Partition> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned left, unsigned cap) -> void {
        if (left == 0) {
            out.push_back({cur});
            return;
        }
        for (unsigned k = std::min(left, cap); k >= 1; --k) {
            cur.push_back(k);
            self(self, left - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// dim Hom between nilpotent Jordan modules: sum over blocks of min(l_i, m_j).
inline unsigned partition_hom(const Partition& lambda, const Partition& mu) {
    unsigned s = 0;
    for (auto a : lambda.parts)
        for (auto b : mu.parts) s += std::min(a, b);
    return s;
}

/// t = 1 module over the free algebra: nilpotent Jordan blocks of sizes lambda.
template <ExactField F>
ModulePoint<F> jordan_module(const Partition& lambda, const F& field) {
    if (!lambda.valid()) throw Error("partition parts must be positive and weakly decreasing");
    const std::size_t d = lambda.size();
    Matrix<F> j(field, d, d);
    std::size_t at = 0;
    for (auto b : lambda.parts) {
        for (std::size_t k = 0; k + 1 < b; ++k) j(at + k, at + k + 1) = field.one();
        at += b;
    }
    return ModulePoint<F>(free_algebra(field, 1), d, {std::move(j)});
}

/// Coefficientwise reduction of an integral matrix (denominators prime to p).
inline Matrix<PrimeField> reduce_mod(const Matrix<RationalField>& m, const PrimeField& field) {
    Matrix<PrimeField> out(field, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const mpq_class& q = m(i, j);
            const long num = mpz_class(q.get_num() % field.p).get_si();
            const long den = mpz_class(q.get_den() % field.p).get_si();
            if (den == 0) throw Error("denominator divisible by " + std::to_string(field.p));
            out(i, j) = field.from_int(num) / field.from_int(den);
        }
    return out;
}

struct SearchOptions {
    std::size_t dz = 2;
    std::size_t t = 2;
    std::uint64_t budget = 1000;  // number of (Z, extension) tuples examined
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::uint64_t enumeration_cap = 1u << 16;  // p^[Z,Z] bound for the indecomposability test
};

struct SearchStats {
    std::uint64_t tuples = 0;
    std::uint64_t summand_found = 0;     // Z was a direct summand of the extension
    std::uint64_t nonsplit = 0;          // ... and the sequence does not split
    std::uint64_t skipped_enumeration = 0;  // draws of Z too large to certify (or End/rad a field)
    std::uint64_t not_indecomposable = 0;   // draws of Z with a nontrivial decomposition
    bool budget_exhausted = false;
};

struct SearchResult {
    std::vector<SelfExtensionDatum<PrimeField>> data;
    std::vector<std::uint64_t> trial;  // tuple index that produced each datum
    SearchStats stats;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Z is drawn from three nilpotent-friendly shapes that keep [Z,Z] small
/// enough to enumerate End(Z): upper triangular, strictly upper triangular, or
/// two radical layers (top of size a mapped into a socle of size dz - a).
inline ModulePoint<PrimeField> random_search_base(const AlgebraRef<PrimeField>& alg, std::size_t dz, Rng& rng) {
    const PrimeField& field = alg->field;
    const auto shape = rng.below(3);
    const std::size_t top = dz > 1 ? 1 + rng.below(dz - 1) : 1;
    std::vector<Matrix<PrimeField>> mats;
    for (std::size_t i = 0; i < alg->generators; ++i) {
        Matrix<PrimeField> m(field, dz, dz);
        for (std::size_t r = 0; r < dz; ++r)
            for (std::size_t c = 0; c < dz; ++c) {
                const bool live = shape == 0 ? c >= r : shape == 1 ? c > r : (c < top && r >= top);
                if (live) m(r, c) = field.from_int(long(rng.below(field.p)));
            }
        mats.push_back(std::move(m));
    }
    return {alg, dz, std::move(mats)};
}

/// Given a self-extension E = [[Z, C], [0, Z]] with i = (1;0), p = (0,1),
/// looks for s: Z -> E and r: E -> Z with r s = 1 and r i = p s. Then
/// E = s(Z) + ker r and the sequence reads in the datum's block form.
inline std::optional<SelfExtensionDatum<PrimeField>> datum_from_extension(const ModulePoint<PrimeField>& z,
                                                                          const ModulePoint<PrimeField>& e,
                                                                          Rng& rng) {
    using M = Matrix<PrimeField>;
    const PrimeField& field = z.field();
    const std::size_t dz = z.dim(), de = e.dim();
    M iota(field, de, dz), pi(field, dz, de);
    for (std::size_t k = 0; k < dz; ++k) {
        iota(k, k) = field.one();
        pi(k, dz + k) = field.one();
    }
    const auto into = hom_basis(z, e);
    const auto back = hom_basis(e, z);
    if (into.dim() == 0 || back.dim() == 0) return std::nullopt;

    // every s when Hom(Z, E) is small, otherwise the basis plus random combinations
    std::vector<M> candidates;
    std::uint64_t total = 1;
    for (std::size_t a = 0; a < into.dim() && total <= 64; ++a) total *= field.p;
    if (total <= 64) {
        for (std::uint64_t code = 1; code < total; ++code) {
            std::vector<Fp> c;
            for (std::uint64_t x = code, a = 0; a < into.dim(); ++a, x /= field.p) c.push_back(field.from_int(long(x % field.p)));
            candidates.push_back(into.combine(c));
        }
    } else {
        candidates = into.basis;
        for (int k = 0; k < 16; ++k) {
            std::vector<Fp> c;
            for (std::size_t a = 0; a < into.dim(); ++a) c.push_back(field.from_int(long(rng.below(field.p))));
            candidates.push_back(into.combine(c));
        }
    }
    for (const auto& s : candidates) {
        if (rank(s) != dz) continue;
        // unknown r = sum x_b back_b:  r s = 1  and  r iota = pi s
        const std::size_t eqs = 2 * dz * dz;
        M sys(field, eqs, back.dim()), rhs(field, eqs, 1);
        for (std::size_t b = 0; b < back.dim(); ++b) {
            sys.set_block(0, b, vectorize(M(back.basis[b] * s)));
            sys.set_block(dz * dz, b, vectorize(M(back.basis[b] * iota)));
        }
        rhs.set_block(0, 0, vectorize(M::identity(field, dz)));
        rhs.set_block(dz * dz, 0, vectorize(M(pi * s)));
        const auto x = solve(sys, rhs);
        if (!x) continue;
        std::vector<Fp> coef;
        for (std::size_t b = 0; b < back.dim(); ++b) coef.push_back((*x)(b, 0));
        const M r = back.combine(coef);
        const M kb = kernel_matrix(r);
        const auto y = restrict_to(e, kb);
        const M q = *solve(kb, M(M::identity(field, de) - s * r));
        return SelfExtensionDatum<PrimeField>{z, y, M(r * iota), M(q * iota), M(-(pi * kb))};
    }
    return std::nullopt;
}

}  // namespace detail

/// Bounded seeded search for nonsplit exact 0 -> Z -> Z+Y -> Z -> 0 over the
/// free algebra on t generators with Z split indecomposable. Each tuple is a
/// certified split indecomposable Z (redrawn until the enumeration test says
/// yes) and a random extension class E; the tuple yields a datum when Z is a
/// direct summand of E in the datum's block form and the sequence does not
/// split. Results do not depend on `jobs`.
inline SearchResult search_thm2(const PrimeField& field, const SearchOptions& opt) {
    if (opt.dz == 0 || opt.t == 0) throw PreconditionError("search needs dZ >= 1 and t >= 1");
    const auto alg = free_algebra(field, opt.t);
    const unsigned jobs = std::max(1u, opt.jobs);
    struct Local {
        std::vector<std::pair<std::uint64_t, SelfExtensionDatum<PrimeField>>> found;
        SearchStats stats;
    };
    std::vector<Local> locals(jobs);
    auto work = [&](unsigned worker) {
        Local& L = locals[worker];
        for (std::uint64_t trial = worker; trial < opt.budget; trial += jobs) {
            Rng rng(detail::splitmix(opt.seed ^ detail::splitmix(trial)));
            ++L.stats.tuples;
            // Z is redrawn until it is certified split indecomposable
            std::optional<ModulePoint<PrimeField>> base;
            for (int draw = 0; draw < 64 && !base; ++draw) {
                auto cand = detail::random_search_base(alg, opt.dz, rng);
                const auto v = split_indecomposable_by_enumeration(cand, opt.enumeration_cap);
                if (v.verdict == SplitVerdict::Yes) base = std::move(cand);
                else if (v.verdict == SplitVerdict::No) ++L.stats.not_indecomposable;
                else ++L.stats.skipped_enumeration;
            }
            if (!base) continue;
            const auto& z = *base;
            std::vector<Matrix<PrimeField>> ext;
            bool nonzero = false;
            for (const auto& zi : z.mats()) {
                Matrix<PrimeField> c = random_matrix(field, rng, opt.dz, opt.dz, 0, long(field.p) - 1, 50);
                nonzero = nonzero || !c.is_zero();
                Matrix<PrimeField> m(field, 2 * opt.dz, 2 * opt.dz);
                m.set_block(0, 0, zi);
                m.set_block(0, opt.dz, c);
                m.set_block(opt.dz, opt.dz, zi);
                ext.push_back(std::move(m));
            }
            if (!nonzero) continue;
            const ModulePoint<PrimeField> e(alg, 2 * opt.dz, std::move(ext));
            auto datum = detail::datum_from_extension(z, e, rng);
            if (!datum) continue;
            ++L.stats.summand_found;
            if (check_split(datum->sequence()).split()) continue;
            ++L.stats.nonsplit;
            L.found.emplace_back(trial, std::move(*datum));
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    std::vector<std::pair<std::uint64_t, SelfExtensionDatum<PrimeField>>> all;
    SearchResult res;
    for (auto& L : locals) {
        for (auto& f : L.found) all.push_back(std::move(f));
        res.stats.tuples += L.stats.tuples;
        res.stats.summand_found += L.stats.summand_found;
        res.stats.nonsplit += L.stats.nonsplit;
        res.stats.skipped_enumeration += L.stats.skipped_enumeration;
        res.stats.not_indecomposable += L.stats.not_indecomposable;
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [trial, d] : all) {
        res.trial.push_back(trial);
        res.data.push_back(std::move(d));
    }
    res.stats.budget_exhausted = true;  // the search always runs to its budget
    return res;
}

}  // namespace orbitcert
