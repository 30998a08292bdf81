#include <catch_amalgamated.hpp>

#include "common.hpp"

using namespace orbitcert;
using namespace fixtures;

namespace {

using CM = CuspModule<RationalField>;
using CB = CuspBimodule<RationalField>;

CM zero_module() { return {0, MQ(Q, 0, 0), MQ(Q, 0, 0), Side::Left}; }
CM simple_module() { return {1, MQ(Q, 1, 1), MQ(Q, 1, 1), Side::Left}; }
CB zero_bimodule() { return symmetric_bimodule(zero_module()); }

/// Free-over-dual-numbers test: ker Xi is contained in im Xi (the other
/// inclusion is Xi^2 = 0).
bool dual_numbers_free(const MQ& xi) {
    const auto ker = kernel_matrix(xi);
    const auto img = column_space(xi);
    return ker.cols() == 0 || (img.cols() > 0 && in_span(img, ker));
}

}  // namespace

TEST_CASE("[P1] on small modules") {
    CHECK(check_p1(zero_module()));
    CHECK_FALSE(check_p1(simple_module()));
    // R / (degree >= 4): basis 1, m^2, m^3
    const auto r4 = truncated_cusp_ring(Q, 4);
    REQUIRE(r4.dim == 3);
    CHECK(r4.A == MQ(Q, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}));
    CHECK(r4.B == MQ(Q, {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}));
    CHECK(check_p1(r4) == dual_numbers_free(xi_operator(r4)));
    CHECK_FALSE(check_p1(r4));
    CHECK_THROWS_AS(check_p1(transpose(r4)), PreconditionError);
    CM bad = r4;
    bad.A(0, 0) = 1;
    CHECK_THROWS_AS(check_p1(bad), InvalidCuspModule);
}

TEST_CASE("[P1'] and transpose duality") {
    CM zr = zero_module(), sr = simple_module();
    zr.side = sr.side = Side::Right;
    CHECK(check_p1prime(zr));
    CHECK_FALSE(check_p1prime(sr));
    Rng rng(8);
    int trues = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = random_cusp_module(Q, rng, 1 + rng.below(6));
        const bool p1 = check_p1(m);
        CHECK(p1 == dual_numbers_free(xi_operator(m)));
        CHECK(check_p1prime(transpose(m)) == p1);
        trues += p1;
    }
    CHECK(trues > 0);
}

TEST_CASE("[P2] on small bimodules") {
    CHECK(check_p2(zero_bimodule()));
    CHECK_FALSE(check_p2(symmetric_bimodule(simple_module())));
    CHECK(check_long_n(zero_bimodule()).passed());
    CHECK(check_long_n(symmetric_bimodule(simple_module())).status == Status::PreconditionFailure);
}

TEST_CASE("operator identities") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const auto b = random_cusp_bimodule(Q, rng, 6);
        REQUIRE(is_valid_cusp(b));
        CHECK(xi_operator(b.left()).pow(2).is_zero());
        const auto [xi, eta] = big_n_operators(b);
        CHECK((xi * xi).is_zero());
        CHECK((eta * eta).is_zero());
        CHECK(xi * eta == eta * xi);
    }
}

TEST_CASE("endomorphism bimodule") {
    const auto s = sharp_gap_datum();
    const auto z = endo_bimodule(s.Y, MQ(Q, 4, 4), MQ(Q, 4, 4));
    CHECK(z.dim == hom_dim(s.Y, s.Y));
    CHECK(z.LA.is_zero());
    CHECK(z.RB.is_zero());

    const auto [x, y] = endo_pair_from_datum(s);
    const auto b = endo_bimodule(s.Y, x, y);
    CHECK(b.dim == 4);
    CHECK(is_valid_cusp(b));
    const bool p2 = check_p2(b);
    const auto ln = check_long_n(b);
    if (p2) CHECK(ln.passed());
    else CHECK(ln.status == Status::PreconditionFailure);

    // naturality under a change of basis of Y
    Rng rng(12);
    const auto g = random_invertible(Q, rng, 4);
    const auto gi = *inverse(g);
    const auto b2 = endo_bimodule(s.Y.conjugate(g), MQ(g * x * gi), MQ(g * y * gi));
    CHECK(b2.dim == b.dim);
    CHECK(check_p2(b2) == p2);
    CHECK(check_p1(b2.left()) == check_p1(b.left()));
    CHECK(rank(b2.LA) == rank(b.LA));
    CHECK(rank(b2.RB) == rank(b.RB));

    CHECK_THROWS_AS(endo_bimodule(s.Y, MQ::identity(Q, 4), MQ(Q, 4, 4)), InvalidCuspModule);
}

TEST_CASE("2-of-3 harness edge cases") {
    Rng rng(77);
    const auto b = random_cusp_bimodule(Q, rng, 4);
    const auto zero = two_of_three(zero_bimodule(), b, MQ(Q, b.dim, 0));
    CHECK(zero.status != Status::TheoremViolation);
    CHECK(*zero.get("P2_total") == *zero.get("P2_quotient"));
    const auto all = two_of_three(b, b, MQ::identity(Q, b.dim));
    CHECK(*all.get("P2_sub") == *all.get("P2_total"));
    CHECK(*all.get("P2_quotient") == 1);
    CHECK_THROWS_AS(two_of_three(b, b, MQ(Q, b.dim, b.dim)), PreconditionError);
}

TEST_CASE("property: long sequence under [P2] and two-of-three on random bimodules") {
    Rng rng(1234);
    int p2 = 0, triples = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto b = random_cusp_bimodule(Q, rng, 6);
        if (check_p2(b)) {
            ++p2;
            CHECK(check_long_n(b).passed());
        }
        if (b.dim < 2) continue;
        const auto sub = invariant_closure(bimodule_actions(b), random_matrix(Q, rng, b.dim, 1, -1, 1, 30));
        if (sub.cols() == 0) continue;
        const auto r = two_of_three(restrict_bimodule(b, sub), b, sub);
        CHECK(r.status != Status::TheoremViolation);
        ++triples;
    }
    CHECK(p2 > 0);
    CHECK(triples > 0);
}
