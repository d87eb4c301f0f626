#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringrep/irreps.hpp"

#include <map>
#include <random>

using namespace ringrep;

namespace {

const GroupSpec sl2 = GroupSpec::sl(2);

}  // namespace

TEST_CASE("conjugacy classes of SL_2(F_3) and invariants") {
    FiniteGroupView g(sl2, 3, 1);
    auto cls = conjugacy_classes(g);
    CHECK(cls.count() == 7);
    i64 total = 0;
    for (i64 s : cls.sizes) {
        CHECK((i64)g.size() % s == 0);  // orbit-stabilizer
        total += s;
    }
    CHECK(total == (i64)g.size());
    // constant on classes: conjugating a representative stays in its class
    std::mt19937_64 rng(1);
    for (size_t c = 0; c < cls.count(); ++c)
        for (int t = 0; t < 10; ++t) {
            u32 gi = (u32)(rng() % g.size());
            CHECK(cls.class_of[g.conj(gi, cls.reps[c])] == (u32)c);
        }
}

TEST_CASE("abelian subgroup classes would be singletons") {
    // the kernel K_1 inside SL_2(Z/9) is abelian: all commutators vanish, so
    // conjugation inside the subgroup fixes everything
    FiniteGroupView g(sl2, 3, 2);
    auto k1 = g.kernel_indices(1);
    for (u32 a : k1)
        for (u32 b : k1) CHECK(g.mul(a, b) == g.mul(b, a));
}

TEST_CASE("induced character pinned values") {
    FiniteGroupView g(sl2, 3, 2);
    auto cls = conjugacy_classes(g);
    // inducing the trivial character of G from G gives the trivial character
    std::vector<u32> whole;
    for (u32 i = 0; i < (u32)g.size(); ++i) whole.push_back(i);
    std::vector<cplx> ones(whole.size(), 1.0);
    auto triv = induced_character(g, cls, whole, ones);
    for (auto& v : triv.values) CHECK(std::abs(v - 1.0) < 1e-12);
    CHECK(std::abs(inner_product(g, cls, triv, triv) - 1.0) < 1e-12);

    // induced dimension from the elliptic stabilizer: [648 : 108] * 1 = 6
    Mat beta = beta_preset("elliptic-unramified", sl2, 3, 2);
    auto fam = theta_set(sl2, 3, 2, beta);
    SigmaEven sig = sigma_even(g, beta, fam, 0);
    std::vector<cplx> vals;
    for (auto& v : sig.values) vals.push_back(v.to_complex());
    auto chi = induced_character(g, cls, sig.domain, vals);
    // the value at the identity class is the dimension
    CHECK(std::abs(chi.values[cls.class_of[g.identity()]] - cplx(6.0, 0.0)) < 1e-9);
}

TEST_CASE("frobenius reciprocity spot checks") {
    FiniteGroupView g(sl2, 3, 2);
    auto cls = conjugacy_classes(g);
    Mat beta = beta_preset("elliptic-unramified", sl2, 3, 2);
    auto fam = theta_set(sl2, 3, 2, beta);
    SigmaEven sig = sigma_even(g, beta, fam, 1);
    std::vector<cplx> vals;
    for (auto& v : sig.values) vals.push_back(v.to_complex());
    auto chi = induced_character(g, cls, sig.domain, vals);
    // <Ind sigma, chi>_G = <sigma, Res chi>_H for chi = Ind sigma itself
    cplx lhs = inner_product(g, cls, chi, chi);
    cplx rhs = 0.0;
    for (size_t t = 0; t < sig.domain.size(); ++t)
        rhs += vals[t] * std::conj(chi.values[cls.class_of[sig.domain[t]]]);
    rhs /= (double)sig.domain.size();
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("rho recovery roundtrip at odd precision") {
    FiniteGroupView g(sl2, 3, 3);
    Mat beta = beta_preset("elliptic-unramified", sl2, 3, 3);
    auto fam = theta_set(sl2, 3, 3, beta);
    REQUIRE(fam.thetas.size() == 12);
    // every theta recovers an additive rho; each rho appears |theta|/3 times
    std::map<std::vector<i64>, int> seen;
    for (size_t t = 0; t < fam.thetas.size(); ++t) {
        auto rho = recover_rho(g, beta, fam, t);
        CHECK(rho.size() == 1);
        seen[rho]++;
    }
    CHECK(seen.size() == 3);
    for (auto& [rho, count] : seen) CHECK(count == 4);
}

TEST_CASE("prop: induced psi from Z to the kernel is dim times the character of pi") {
    FiniteGroupView g(sl2, 3, 3);
    Mat beta = beta_preset("elliptic-unramified", sl2, 3, 3);
    LieLattice lie(sl2, 3, 1);
    std::vector<Mat> amb;
    for (auto& b : lie.basis(1)) amb.push_back(b);
    SymplecticSpace v(3, amb, beta.reduced(3));
    auto z = z_group_and_psi_rho(g, beta);
    std::map<u32, size_t> zpos;
    for (size_t i = 0; i < z.z_indices.size(); ++i) zpos[z.z_indices[i]] = i;

    for (size_t ri = 0; ri < z.rho_exponents.size(); ++ri) {
        auto pi = pi_beta_rho(g, beta, z.rho_exponents[ri], v);
        // Ind_Z^{K_1} psi = dim(pi) * chi_pi, checked pointwise on all of K_1
        for (u32 k : pi.kernel) {
            cplx ind = 0.0;
            for (u32 u : pi.kernel) {
                u32 conj = g.mul(g.mul(u, k), g.inv(u));
                auto it = zpos.find(conj);
                if (it != zpos.end()) ind += z.psi_rho[ri][it->second].to_complex();
            }
            ind /= (double)z.z_indices.size();
            cplx expect = (double)pi.dim * pi.at(k).trace();
            CHECK(std::abs(ind - expect) < 1e-9);
        }
        break;  // one rho suffices here; the acceptance suite runs all three
    }
}

TEST_CASE("sigma_odd: dimensions, compatibility, multiplicativity sample") {
    FiniteGroupView g(sl2, 3, 3);
    Mat beta = beta_preset("elliptic-unramified", sl2, 3, 3);
    auto fam = theta_set(sl2, 3, 3, beta);
    LieLattice lie(sl2, 3, 1);
    std::vector<Mat> amb;
    for (auto& b : lie.basis(1)) amb.push_back(b);
    SymplecticSpace v(3, amb, beta.reduced(3));

    size_t t = 0;
    auto rho = recover_rho(g, beta, fam, t);
    auto pi = pi_beta_rho(g, beta, rho, v);
    auto ifam = intertwiner_family(g, pi, fam.centralizer, 21);
    auto uh = make_homomorphic(g, pi, ifam);
    SigmaOdd sig = sigma_odd(g, beta, fam, t, rho, pi, uh);
    CHECK(sig.dim == 3);
    CHECK(sig.domain.size() == 2916);  // 36 * 729 / 9

    // matrix-level multiplicativity on a seeded sample of pairs
    std::map<u32, size_t> pos;
    for (size_t i = 0; i < sig.domain.size(); ++i) pos[sig.domain[i]] = i;
    auto value_of = [&](size_t i) {
        CMat m = cmat_mul(uh.U[(size_t)sig.g_local[i]], pi.at(sig.h_index[i]).dense(), 3);
        return cmat_scale(m, fam.thetas[t].values[(size_t)sig.g_local[i]].to_complex());
    };
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        size_t a = (size_t)(rng() % sig.domain.size());
        size_t b = (size_t)(rng() % sig.domain.size());
        u32 ab = g.mul(sig.domain[a], sig.domain[b]);
        REQUIRE(pos.count(ab) == 1);
        CMat lhs = cmat_mul(value_of(a), value_of(b), 3);
        CHECK(cmat_dist(lhs, value_of(pos[ab]), 3) < 1e-9);
    }

    // restriction to K_l is psi_beta-isotypic: sigma(k) = psi_beta(k) * Id
    PsiBeta psi(beta, 3, 3);
    for (u32 k : g.kernel_indices(2)) {
        auto it = pos.find(k);
        REQUIRE(it != pos.end());
        CMat m = value_of(it->second);
        CHECK(cmat_dist(m, cmat_scale(cmat_identity(3), psi.eval(g.mat(k)).to_complex()), 3) < 1e-9);
    }
}

TEST_CASE("certify_family at even precision: the full orbit sweep") {
    FiniteGroupView g(sl2, 3, 2);
    auto cls = conjugacy_classes(g);
    CHECK(cls.count() == 25);
    auto orb = orbit_decomposition(sl2, 3, 1);
    std::map<i64, std::pair<size_t, i64>> by_size;  // orbit size -> (thetas, dim)
    for (size_t i = 0; i < orb.reps.size(); ++i) {
        if (orb.reps[i].is_zero()) continue;
        Mat rep(2, 9);
        for (int e = 0; e < 4; ++e) rep.a[(size_t)e] = orb.reps[i].a[(size_t)e];
        auto cert = certify_family(g, rep, cls);
        CHECK(cert.pass);
        CHECK(cert.sigma_dim == 1);
        by_size[orb.sizes[i]] = {cert.theta_count, cert.induced_dim};
    }
    CHECK(by_size[6] == std::make_pair((size_t)4, (i64)6));     // elliptic
    CHECK(by_size[12] == std::make_pair((size_t)2, (i64)12));   // split
    CHECK(by_size[4] == std::make_pair((size_t)6, (i64)4));     // nilpotent pair
}

TEST_CASE("certify_family rejects non-regular beta") {
    FiniteGroupView g(sl2, 3, 2);
    auto cls = conjugacy_classes(g);
    Mat zero(2, 9);
    auto cert = certify_family(g, zero, cls);
    CHECK_FALSE(cert.applicable);
    CHECK_FALSE(cert.pass);
}
