#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringrep/tame.hpp"

using namespace ringrep;

TEST_CASE("generator test") {
    auto d = tame_datum("gl-unram-f2", 3, 2);
    CHECK(generator_test(d, d.L.gen()));            // t generates
    CHECK(generator_test(d, d.omega));              // the trace-zero unit generates
    CHECK_FALSE(generator_test(d, d.L.from_base(2)));  // base elements are Frobenius-fixed
    CHECK_FALSE(generator_test(d, d.L.from_base(0)));
    // consequence is asserted inside: reduced charpoly irreducible of degree 2
    Mat emb = d.embed(d.L.gen());
    auto [chi, mu] = charpoly_minpoly(emb.reduced(3));
    CHECK(chi == mu);
    CHECK(chi.degree() == 2);
    CHECK(poly_is_irreducible(chi));
}

TEST_CASE("embedding respects trace and norm (exhaustive)") {
    for (int r = 1; r <= 2; ++r) {
        auto d = tame_datum("gl-unram-f2", 3, r);
        for (auto& x : d.L.all_elements()) {
            Mat m = d.embed(x);
            CHECK(m.trace() == d.L.trace(x));
            CHECK(m.det() == d.L.norm(x));
        }
    }
    // multiplicativity of the embedding
    auto d = tame_datum("gl-unram-f2", 3, 2);
    auto els = d.L.all_elements();
    for (size_t i = 0; i < els.size(); i += 5)
        for (size_t j = 0; j < els.size(); j += 7)
            CHECK(d.embed(d.L.mul(els[i], els[j])) == d.embed(els[i]) * d.embed(els[j]));
}

TEST_CASE("symplectic datum: the pairing gram is the standard J") {
    // checked inside tame_datum; failure would throw
    CHECK_NOTHROW(tame_datum("sp-quad-unram", 3, 2));
    CHECK_NOTHROW(tame_datum("sp-quad-unram", 3, 3));
    CHECK_NOTHROW(tame_datum("sp-quad-unram", 5, 2));
}

TEST_CASE("so data: unimodular symmetric forms") {
    auto d = tame_datum("so-even-f2", 3, 2);
    CHECK(d.spec.family == Family::SO);
    CHECK(d.spec.n == 2);
    auto d3 = tame_datum("so-odd-f2", 3, 2);
    CHECK(d3.spec.n == 3);
    // embedded beta lands in the lie algebra (form identity as membership)
    auto beta = default_beta(d3);
    CHECK(d3.spec.lie_member(d3.embed(beta, 0)));
}

TEST_CASE("beta constraints are enforced") {
    auto d = tame_datum("sp-quad-unram", 3, 2);
    // beta = 1 violates beta^rho + beta = 0
    CHECK_THROWS_AS(tame_cross_check(d, d.L.one()), ConstraintViolatedError);
    auto dsl = tame_datum("sl-norm1-f2", 3, 2);
    CHECK_THROWS_AS(tame_cross_check(dsl, dsl.L.gen()), ConstraintViolatedError);  // T(t) != 0
}

TEST_CASE("cross-checks at r = 2: counts, bijections, centralizers") {
    struct Expect {
        const char* preset;
        size_t units, lcount;
    };
    // counts derived from unit-group indices: |U| / |U cap (1 + p^l O_L)|
    const Expect expect[] = {
        {"gl-unram-f2", 72, 8},
        {"sl-norm1-f2", 12, 4},
        {"sp-quad-unram", 12, 4},
        {"so-even-f2", 12, 4},
        {"so-odd-f2", 12, 4},
    };
    for (auto& e : expect) {
        auto d = tame_datum(e.preset, 3, 2);
        auto rep = tame_cross_check(d, default_beta(d));
        CHECK(rep.unit_group_order == e.units);
        CHECK(rep.lside_count == e.lcount);
        CHECK(rep.abstract_count == e.lcount);
        CHECK(rep.counts_match);
        CHECK(rep.bijection_match);
        CHECK(rep.centralizer_match);
        CHECK(rep.form_identities);
        CHECK_FALSE(rep.exponent_convention_diff);
        CHECK(rep.pass());
    }
}

TEST_CASE("cross-check at r = 3 for the norm-one kinds") {
    auto d = tame_datum("sl-norm1-f2", 3, 3);
    auto rep = tame_cross_check(d, default_beta(d));
    CHECK(rep.unit_group_order == 36);
    CHECK(rep.lside_count == 12);
    CHECK(rep.pass());
}
