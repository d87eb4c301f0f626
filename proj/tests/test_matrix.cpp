#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringrep/matrix.hpp"

#include <random>
#include <set>

using namespace ringrep;

namespace {

Mat rand_mat(int n, i64 mod, std::mt19937_64& rng) {
    Mat m(n, mod);
    for (int i = 0; i < n * n; ++i) m.a[(size_t)i] = (i64)(rng() % (u64)mod);
    return m;
}

Mat rand_invertible(int n, i64 mod, i64 p, std::mt19937_64& rng) {
    while (true) {
        Mat m = rand_mat(n, mod, rng);
        if (m.det() % p != 0) return m;
    }
}

}  // namespace

TEST_CASE("charpoly and minpoly on pinned matrices") {
    Mat j2(2, 3);
    j2.at(0, 1) = 1;  // nilpotent Jordan block
    auto [chi, mu] = charpoly_minpoly(j2);
    CHECK(chi == poly_make(3, {0, 0, 1}));
    CHECK(mu == poly_make(3, {0, 0, 1}));

    Mat zero(2, 3);
    auto [chi0, mu0] = charpoly_minpoly(zero);
    CHECK(chi0 == poly_make(3, {0, 0, 1}));
    CHECK(mu0 == poly_make(3, {0, 1}));

    Mat comp = Mat::from_rows(3, {{0, -1}, {1, 0}});  // companion of t^2 + 1
    auto [chic, muc] = charpoly_minpoly(comp);
    CHECK(chic == poly_make(3, {1, 0, 1}));
    CHECK(muc == poly_make(3, {1, 0, 1}));
    CHECK(poly_is_irreducible(chic));
}

TEST_CASE("charpoly conjugation invariance and Cayley-Hamilton (exhaustive over M_2(F_3))") {
    std::mt19937_64 rng(7);
    for (u128 mask = 0; mask < 81; ++mask) {
        Mat m = Mat::unpack(mask, 2, 3);
        auto chi = charpoly_mod(m);
        // Cayley-Hamilton: chi(M) = 0
        Mat acc(2, 3);
        Mat pw = Mat::identity(2, 3);
        for (size_t i = 0; i < chi.size(); ++i) {
            acc = acc + pw.scaled(chi[i]);
            pw = pw * m;
        }
        CHECK(acc.is_zero());
        // conjugation invariance for a random invertible P
        Mat P = rand_invertible(2, 3, 3, rng);
        Mat conj = P * m * P.inverse();
        CHECK(charpoly_mod(conj) == chi);
    }
}

TEST_CASE("cyclic vector test matches charpoly == minpoly (exhaustive over M_2(F_3))") {
    Mat j2(2, 3);
    j2.at(0, 1) = 1;
    CHECK(cyclic_vector_test(j2));
    CHECK_FALSE(cyclic_vector_test(Mat::identity(2, 3)));
    Mat d12 = Mat::from_rows(3, {{1, 0}, {0, 2}});
    CHECK(cyclic_vector_test(d12));

    for (u128 mask = 0; mask < 81; ++mask) {
        Mat m = Mat::unpack(mask, 2, 3);
        auto [chi, mu] = charpoly_minpoly(m);
        CHECK(cyclic_vector_test(m) == (chi == mu));
    }
}

TEST_CASE("solve_modular pinned examples") {
    // 3x = 6 mod 9 has solutions {2, 5, 8}
    auto s = solve_modular({{3}}, {6}, 3, 2);
    REQUIRE(s.has_value());
    std::set<i64> sols;
    CHECK(s->count() == 3);
    sols.insert(s->particular[0]);
    // enumerate the kernel coset
    for (i64 t = 1; t < s->kernel_orders[0]; ++t)
        sols.insert(mod_reduce(s->particular[0] + t * s->kernel[0][0], 9));
    CHECK(sols == std::set<i64>{2, 5, 8});

    CHECK_FALSE(solve_modular({{3}}, {1}, 3, 2).has_value());

    auto id = solve_modular({{1, 0}, {0, 1}}, {4, 7}, 3, 2);
    REQUIRE(id.has_value());
    CHECK(id->particular == std::vector<i64>{4, 7});
    CHECK(id->count() == 1);
}

TEST_CASE("solve_modular against exhaustive search for random 2x2 systems over Z/9") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::vector<i64>> A = {{(i64)(rng() % 9), (i64)(rng() % 9)},
                                           {(i64)(rng() % 9), (i64)(rng() % 9)}};
        std::vector<i64> b = {(i64)(rng() % 9), (i64)(rng() % 9)};
        std::set<std::pair<i64, i64>> brute;
        for (i64 x = 0; x < 9; ++x)
            for (i64 y = 0; y < 9; ++y)
                if (mod_reduce(A[0][0] * x + A[0][1] * y, 9) == b[0] &&
                    mod_reduce(A[1][0] * x + A[1][1] * y, 9) == b[1])
                    brute.insert({x, y});
        auto sol = solve_modular(A, b, 3, 2);
        if (brute.empty()) {
            CHECK_FALSE(sol.has_value());
            continue;
        }
        REQUIRE(sol.has_value());
        CHECK((u128)brute.size() == sol->count());
        // spot check: every generated solution solves, and the particular one is in the brute set
        CHECK(brute.count({sol->particular[0], sol->particular[1]}) == 1);
        std::set<std::pair<i64, i64>> gen;
        std::vector<i64> counter(sol->kernel.size(), 0);
        while (true) {
            i64 x = sol->particular[0], y = sol->particular[1];
            for (size_t k = 0; k < sol->kernel.size(); ++k) {
                x = mod_reduce(x + counter[k] * sol->kernel[k][0], 9);
                y = mod_reduce(y + counter[k] * sol->kernel[k][1], 9);
            }
            gen.insert({x, y});
            size_t k = 0;
            while (k < counter.size()) {
                if (++counter[k] < sol->kernel_orders[k]) break;
                counter[k] = 0;
                ++k;
            }
            if (counter.empty() || k == counter.size()) break;
        }
        CHECK(gen == brute);
    }
}

TEST_CASE("trace form gram matrices") {
    // sl_2 basis {e, f, h} over F_3: nondegenerate
    Mat e = Mat::from_rows(3, {{0, 1}, {0, 0}});
    Mat f = Mat::from_rows(3, {{0, 0}, {1, 0}});
    Mat h = Mat::from_rows(3, {{1, 0}, {0, -1}});
    auto gram = trace_form_gram({e, f, h}, 3, 1);
    CHECK(det_mod_p(gram, 3) != 0);

    // gl_2 standard basis over F_3: nondegenerate
    std::vector<Mat> gl;
    for (int i = 0; i < 4; ++i) {
        Mat b(2, 3);
        b.a[(size_t)i] = 1;
        gl.push_back(b);
    }
    CHECK(det_mod_p(trace_form_gram(gl, 3, 1), 3) != 0);

    // the scalar matrix lies in the radical for sl_3 over F_3
    std::vector<Mat> sl3;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            Mat b(3, 3);
            b.at(i, j) = 1;
            sl3.push_back(b);
        }
    Mat d1 = Mat::from_rows(3, {{1, 0, 0}, {0, -1, 0}, {0, 0, 0}});
    Mat d2 = Mat::from_rows(3, {{0, 0, 0}, {0, 1, 0}, {0, 0, -1}});
    sl3.push_back(d1);
    sl3.push_back(d2);
    CHECK(det_mod_p(trace_form_gram(sl3, 3, 1), 3) == 0);
    Mat z = Mat::identity(3, 3);  // scalar 1 is traceless mod 3 and pairs to zero with everything
    for (const Mat& y : sl3) CHECK(mod_reduce(z.trace_form(y), 3) == 0);
}

TEST_CASE("matrix inverse and pack round trip") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        Mat m = rand_invertible(3, 27, 3, rng);
        CHECK(m * m.inverse() == Mat::identity(3, 27));
        CHECK(Mat::unpack(m.pack(), 3, 27) == m);
    }
    Mat sing(2, 9);
    sing.at(0, 0) = 3;
    CHECK_THROWS_AS(sing.inverse(), NonUnitError);
}
