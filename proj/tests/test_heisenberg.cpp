#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringrep/heisenberg.hpp"

#include <map>
#include <random>

using namespace ringrep;

namespace {

const GroupSpec sl2 = GroupSpec::sl(2);

SymplecticSpace make_space(const GroupSpec& spec, const Mat& beta_bar) {
    LieLattice lie(spec, 3, 1);
    std::vector<Mat> amb;
    for (auto& b : lie.basis(1)) amb.push_back(b);
    return SymplecticSpace(3, amb, beta_bar);
}

}  // namespace

TEST_CASE("symplectic space dimensions") {
    Mat ell = Mat::from_rows(3, {{0, 2}, {1, 0}});
    SymplecticSpace v = make_space(sl2, ell);
    CHECK(v.dim() == 2);
    CHECK(v.half() == 1);
    CHECK(v.central_basis().size() == 1);

    SymplecticSpace vgl = make_space(GroupSpec::gl(2), ell);
    CHECK(vgl.dim() == 2);  // 4 - 2
    CHECK(vgl.central_basis().size() == 2);

    Mat zero(2, 3);
    CHECK_THROWS_AS(make_space(sl2, zero), DegenerateFormError);
}

TEST_CASE("sections and pairing invariants") {
    Mat ell = Mat::from_rows(3, {{0, 2}, {1, 0}});
    SymplecticSpace v = make_space(sl2, ell);
    // antisymmetry and nondegeneracy are checked in the constructor; spot
    // the polarization relations
    std::vector<i64> e{1, 0}, f{0, 1};
    auto [ea, eb] = v.polarize(e);
    (void)ea;
    (void)eb;
    // sections reproduce classes
    auto s = v.random_section(77);
    for (int j = 0; j < v.dim(); ++j) {
        std::vector<i64> ej((size_t)v.dim(), 0);
        ej[(size_t)j] = 1;
        auto [cls, y] = v.decompose(v.apply_section(s, ej));
        CHECK(cls == ej);
        (void)y;
    }
}

TEST_CASE("schur cocycle basics: identity row, invariant section, cocycle identity") {
    Mat ell = Mat::from_rows(3, {{0, 2}, {1, 0}});
    SymplecticSpace v = make_space(sl2, ell);
    MatGroup gbf = centralizer_unit_group(sl2, 3, 1, ell);
    CHECK(gbf.elems.size() == 4);
    GroupTable tab = gbf.table();
    for (i64 r = 0; r < 3; ++r) {
        auto sc = schur_cocycle(v, gbf, {r});
        // v_1 = 0 and c(1, .) = c(., 1) = 1
        for (i64 x : sc.v_g[(size_t)gbf.id]) CHECK(x == 0);
        CHECK(sc.cocycle.is_normalized(gbf.id));
        CHECK(sc.cocycle.is_cocycle(tab));
        // the trace-orthogonal section is invariant here, so gamma vanishes
        for (auto& c : sc.cocycle.table) CHECK(c.is_one());
        // multiplication law v_{gh} = v_h sigma_g^{-1} + v_g via the cocycle
        // construction is exercised by the random-section variant below
        auto rs = v.random_section(5);
        auto sc2 = schur_cocycle(v, gbf, {r}, &rs);
        CHECK(sc2.cocycle.is_cocycle(tab));
        auto cert = trivialize(sc2.cocycle, tab, AbelianBasis(tab));
        CHECK(cert.ok);
    }
}

TEST_CASE("v_g multiplication law for nilpotent beta with a non-invariant section") {
    Mat nilp = Mat::from_rows(3, {{0, 1}, {0, 0}});
    SymplecticSpace v = make_space(sl2, nilp);
    MatGroup gbf = centralizer_unit_group(sl2, 3, 1, nilp);
    CHECK(gbf.elems.size() == 6);
    auto sc = schur_cocycle(v, gbf, {1});
    // v_{gh} = v_h sigma_g^{-1} + v_g, with sigma acted through matrices
    for (size_t gi = 0; gi < gbf.elems.size(); ++gi)
        for (size_t hi = 0; hi < gbf.elems.size(); ++hi) {
            int ghi = gbf.mul((int)gi, (int)hi);
            // apply Ad(g) to the section image of v_h and take the class:
            // sigma_g^{-1} = Ad(g) on classes
            Mat g = gbf.elems[gi];
            Mat img = g * v.apply_section(v.default_section(), sc.v_g[hi]) * g.inverse();
            auto [vh_sig, y] = v.decompose(img);
            (void)y;
            for (int i = 0; i < v.dim(); ++i) {
                i64 expect = mod_reduce(vh_sig[(size_t)i] + sc.v_g[gi][(size_t)i], 3);
                CHECK(sc.v_g[(size_t)ghi][(size_t)i] == expect);
            }
        }
    // nontrivial rho with the fallback section gives a genuinely nontrivial
    // table that is still a coboundary
    bool nontrivial = false;
    for (auto& c : sc.cocycle.table)
        if (!c.is_one()) nontrivial = true;
    CHECK(nontrivial);
    GroupTable tab = gbf.table();
    auto cert = trivialize(sc.cocycle, tab, AbelianBasis(tab));
    CHECK(cert.ok);
}

TEST_CASE("section independence including the closed-form cochain") {
    for (const char* which : {"elliptic", "nilpotent"}) {
        Mat beta = which[0] == 'e' ? Mat::from_rows(3, {{0, 2}, {1, 0}})
                                   : Mat::from_rows(3, {{0, 1}, {0, 0}});
        SymplecticSpace v = make_space(sl2, beta);
        MatGroup gbf = centralizer_unit_group(sl2, 3, 1, beta);
        for (i64 r = 0; r < 3; ++r) {
            std::vector<std::vector<Mat>> sections{v.default_section(), v.random_section(11),
                                                   v.random_section(222)};
            CHECK(section_independence_check(v, gbf, {r}, sections));
            // identical sections trivially match
            std::vector<std::vector<Mat>> twice{v.default_section(), v.default_section()};
            CHECK(section_independence_check(v, gbf, {r}, twice));
        }
    }
}

TEST_CASE("restriction to gl_2 for sl_2 and sp_2") {
    Mat ell = Mat::from_rows(3, {{0, 2}, {1, 0}});
    for (i64 r = 0; r < 3; ++r) {
        CHECK(restriction_compare(GroupSpec::sl(2), 3, ell, {r}));
        CHECK(restriction_compare(GroupSpec::sp(2), 3, ell, {r}));
    }
    Mat nilp = Mat::from_rows(3, {{0, 1}, {0, 0}});
    for (i64 r = 0; r < 3; ++r) CHECK(restriction_compare(GroupSpec::sl(2), 3, nilp, {r}));
}

TEST_CASE("trivialize pinned examples") {
    // constant cocycle on C_4: alpha identically 1
    GroupTable c4;
    c4.n = 4;
    c4.id = 0;
    c4.mul = [](int a, int b) { return (a + b) % 4; };
    AbelianBasis basis(c4);
    auto cert = trivialize(Cocycle2::trivial(4), c4, basis);
    CHECK(cert.ok);
    for (auto& a : cert.alpha) CHECK(a.is_one());

    // coboundary of a random cochain is recovered
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<CycScalar> alpha;
        for (int i = 0; i < 4; ++i) alpha.push_back(CycScalar::root(12, (i64)(rng() % 12)));
        alpha[0] = CycScalar::one();
        Cocycle2 c;
        c.n = 4;
        c.table.resize(16);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                c.at(a, b) = alpha[(size_t)a] * alpha[(size_t)b] * alpha[(size_t)((a + b) % 4)].inv();
        CHECK(c.is_cocycle(c4));
        auto cc = trivialize(c, c4, basis);
        CHECK(cc.ok);
        CHECK(verify_coboundary(c, cc.alpha, c4));
    }

    // a genuinely nontrivial class on C_2 x C_2 fails with obstruction data
    GroupTable v4;
    v4.n = 4;
    v4.id = 0;
    v4.mul = [](int a, int b) { return a ^ b; };
    Cocycle2 bad = Cocycle2::trivial(4);
    // the standard skew class: c((a1,a2),(b1,b2)) = (-1)^{a2 b1}
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            bad.at(a, b) = CycScalar::root(2, ((a >> 1) & 1) * (b & 1));
    AbelianBasis vb(v4);
    CHECK(bad.is_cocycle(v4));
    auto fail = trivialize(bad, v4, vb);
    CHECK_FALSE(fail.ok);
    CHECK(!fail.obstruction.empty());
}

TEST_CASE("schrodinger model is a heisenberg representation") {
    Mat ell = Mat::from_rows(3, {{0, 2}, {1, 0}});
    SymplecticSpace v = make_space(sl2, ell);
    SchrodingerModel model(v);
    CHECK(model.dim() == 3);
    // pi(u, s) pi(v, t) = pi(u + v, s t tau(<u,v>/2)) on all pairs
    i64 inv2 = mod_inv(2, 3);
    std::vector<std::vector<i64>> all;
    for (i64 a = 0; a < 3; ++a)
        for (i64 b = 0; b < 3; ++b) all.push_back({a, b});
    for (auto& u : all)
        for (auto& w : all) {
            auto lhs = model.pi(u, CycScalar::one()) * model.pi(w, CycScalar::one());
            std::vector<i64> sum{mod_reduce(u[0] + w[0], 3), mod_reduce(u[1] + w[1], 3)};
            auto rhs = model.pi(sum, CycScalar::root(3, inv2 * v.pairing(u, w)));
            CHECK(lhs == rhs);
        }
    // the centre acts by the scalar
    auto central = model.pi({0, 0}, CycScalar::root(3, 1));
    CycScalar s;
    CHECK(central.is_scalar(&s));
    CHECK(s == CycScalar::root(3, 1));
}

TEST_CASE("monomial matrices behave") {
    Mat ell = Mat::from_rows(3, {{0, 2}, {1, 0}});
    SymplecticSpace v = make_space(sl2, ell);
    SchrodingerModel model(v);
    auto a = model.pi({1, 2}, CycScalar::root(3, 1));
    CHECK(a * a.inverse() == MonomialMat::identity(3));
    auto d = a.dense();
    auto di = cmat_inv(d, 3);
    CHECK(cmat_dist(cmat_mul(d, di, 3), cmat_identity(3), 3) < 1e-12);
}

TEST_CASE("kernel representation: scalars on Z, irreducible commutant, D nondegenerate") {
    FiniteGroupView g(sl2, 3, 3);
    Mat beta = beta_preset("elliptic-unramified", sl2, 3, 3);
    SymplecticSpace v = make_space(sl2, beta.reduced(3));
    auto z = z_group_and_psi_rho(g, beta);
    std::map<u32, size_t> zpos;
    for (size_t i = 0; i < z.z_indices.size(); ++i) zpos[z.z_indices[i]] = i;

    for (size_t ri = 0; ri < z.rho_exponents.size(); ++ri) {
        auto pi = pi_beta_rho(g, beta, z.rho_exponents[ri], v);
        CHECK(pi.dim == 3);
        // restriction to Z is the homothety psi_{beta, rho}
        for (u32 zi : z.z_indices) {
            CycScalar s;
            REQUIRE(pi.at(zi).is_scalar(&s));
            CHECK(s == z.psi_rho[ri][zpos[zi]]);
        }
        // K_l acts by psi_beta times identity
        PsiBeta psi(beta, 3, 3);
        for (u32 k : g.kernel_indices(2)) {
            CycScalar s;
            REQUIRE(pi.at(k).is_scalar(&s));
            CHECK(s == psi.eval(g.mat(k)));
        }
        // commutant has dimension 1: solve [M, pi(k)] = 0 over the kernel
        // generators by stacking real linear equations
        std::vector<CMat> gens;
        for (size_t t = 0; t < pi.kernel.size(); t += 97) gens.push_back(pi.value[t].dense());
        int d = pi.dim;
        std::vector<std::vector<double>> rows;
        for (auto& pg : gens)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    std::vector<double> re((size_t)(2 * d * d), 0.0), im((size_t)(2 * d * d), 0.0);
                    for (int k = 0; k < d; ++k) {
                        cplx a = pg[(size_t)(k * d + j)];   // M_{ik} pi_{kj}
                        cplx b = pg[(size_t)(i * d + k)];   // pi_{ik} M_{kj}
                        size_t col_re = (size_t)(i * d + k), col_im = (size_t)(d * d + i * d + k);
                        re[col_re] += std::real(a);
                        re[col_im] -= std::imag(a);
                        im[col_re] += std::imag(a);
                        im[col_im] += std::real(a);
                        col_re = (size_t)(k * d + j);
                        col_im = (size_t)(d * d + k * d + j);
                        re[col_re] -= std::real(b);
                        re[col_im] += std::imag(b);
                        im[col_re] -= std::imag(b);
                        im[col_im] -= std::real(b);
                    }
                    rows.push_back(re);
                    rows.push_back(im);
                }
        // rank over the reals by Gaussian elimination
        size_t ncols = 2 * (size_t)(d * d);
        int rank = 0;
        for (size_t c = 0; c < ncols; ++c) {
            size_t piv = (size_t)rank;
            double bestv = 1e-8;
            size_t bestr = rows.size();
            for (size_t i = piv; i < rows.size(); ++i)
                if (std::abs(rows[i][c]) > bestv) { bestv = std::abs(rows[i][c]); bestr = i; }
            if (bestr == rows.size()) continue;
            std::swap(rows[(size_t)rank], rows[bestr]);
            double inv = 1.0 / rows[(size_t)rank][c];
            for (auto& x : rows[(size_t)rank]) x *= inv;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == (size_t)rank) continue;
                double f = rows[i][c];
                if (f == 0) continue;
                for (size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[(size_t)rank][j];
            }
            ++rank;
        }
        CHECK((int)ncols - rank == 2);  // complex dimension 1
    }

    // D pairing on K_{l-1}/Z: commutator characters form a nondegenerate
    // pairing; check via the symplectic gram already certified, and directly
    // on coset representatives
    auto k1 = g.kernel_indices(1);
    PsiBeta psi(beta, 3, 3);
    std::vector<u32> reps;
    std::set<u128> seen;
    for (u32 k : k1) {
        // coset label: the class of k modulo Z
        if (zpos.count(k)) continue;
        reps.push_back(k);
        if (reps.size() == 2) break;  // dim V = 2: need 2 independent cosets
    }
    // build the full coset pairing matrix over chosen representatives of
    // K_1 / Z (9 cosets for dim V = 2 over F_3): values are cube roots
    std::vector<u32> coset_reps;
    std::map<u128, u32> coset_seen;
    for (u32 k : k1) {
        // canonical coset key: min packed over k * Z
        u128 minkey = ~(u128)0;
        for (u32 zi : z.z_indices) minkey = std::min(minkey, (u128)g.mat(g.mul(k, zi)).pack());
        if (!coset_seen.count(minkey)) {
            coset_seen[minkey] = k;
            coset_reps.push_back(k);
        }
    }
    CHECK(coset_reps.size() == 9);
    // nondegeneracy: for every nonidentity coset x there is y with D(x,y) != 1
    for (u32 x : coset_reps) {
        if (zpos.count(x)) continue;
        bool hit = false;
        for (u32 y : coset_reps) {
            u32 comm = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
            if (!psi.eval(g.mat(comm)).is_one()) hit = true;
        }
        CHECK(hit);
    }
}

TEST_CASE("intertwiners: schur scalar on the intersection and class equality") {
    FiniteGroupView g(sl2, 3, 3);
    Mat beta = beta_preset("elliptic-unramified", sl2, 3, 3);
    SymplecticSpace v = make_space(sl2, beta.reduced(3));
    auto fam = theta_set(sl2, 3, 3, beta);
    auto pi = pi_beta_rho(g, beta, {1}, v);
    auto ifam = intertwiner_family(g, pi, fam.centralizer, 5);
    CHECK(ifam.max_intertwining_residual < 1e-9);
    GroupTable tab = fam.centralizer.table();
    CHECK(ifam.c_u.is_cocycle(tab));
    CHECK(ifam.c_u.is_normalized(fam.centralizer.id));

    // U(g) proportional to pi(g) for g in the intersection with K_{l-1}
    for (size_t gi = 0; gi < fam.centralizer.elems.size(); ++gi) {
        const Mat& gm = fam.centralizer.elems[gi];
        if (!(gm.reduced(3) == Mat::identity(2, 3))) continue;
        CMat pim = pi.at(g.index_of(gm)).dense();
        CMat U = ifam.U[gi];
        // U * pi(g)^{-1} is a scalar
        CMat q = cmat_mul(U, cmat_inv(pim, 3), 3);
        cplx s = cmat_trace(q, 3) / 3.0;
        CHECK(cmat_dist(q, cmat_scale(cmat_identity(3), s), 3) < 1e-9);
    }

    // [c_U] equals the inflation of the schur cocycle
    MatGroup gbf = centralizer_unit_group(sl2, 3, 1, beta.reduced(3));
    auto sc = schur_cocycle(v, gbf, {1});
    int ng = (int)fam.centralizer.elems.size();
    Cocycle2 infl;
    infl.n = ng;
    infl.table.assign((size_t)(ng * ng), CycScalar::one());
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b)
            infl.at(a, b) = sc.cocycle.at(gbf.index_of(fam.centralizer.elems[(size_t)a].reduced(3)),
                                          gbf.index_of(fam.centralizer.elems[(size_t)b].reduced(3)));
    AbelianBasis basis(tab);
    CHECK(trivialize(ifam.c_u.ratio(infl), tab, basis).ok);

    // the homomorphic rescaling
    auto uh = make_homomorphic(g, pi, ifam);
    CHECK(uh.hom_residual < 1e-9);
    CHECK(uh.unit_residual < 1e-9);

    // intertwining identity through U_psi on a sample
    std::mt19937_64 rng(10);
    for (int t = 0; t < 40; ++t) {
        size_t gi = (size_t)(rng() % fam.centralizer.elems.size());
        u32 gv = g.index_of(fam.centralizer.elems[gi]);
        u32 x = pi.kernel[(size_t)(rng() % pi.kernel.size())];
        u32 cx = g.mul(g.mul(g.inv(gv), x), gv);
        CMat lhs = cmat_mul(uh.U[gi], pi.at(cx).dense(), 3);
        CMat rhs = cmat_mul(pi.at(x).dense(), uh.U[gi], 3);
        CHECK(cmat_dist(lhs, rhs, 3) < 1e-9);
    }
}
