#include "ringrep/tame.hpp"

#include <algorithm>
#include <map>

namespace ringrep {

namespace {

// coordinates of y in the datum basis, via the inverse of the basis matrix
std::vector<i64> basis_coords(const UnramifiedDatum& d, const GaloisRingElem& y) {
    int f = d.f;
    std::vector<std::vector<i64>> A((size_t)f, std::vector<i64>((size_t)f, 0));
    std::vector<i64> rhs((size_t)f, 0);
    for (int i = 0; i < f; ++i) {
        for (int j = 0; j < f; ++j) A[(size_t)i][(size_t)j] = d.basis[(size_t)j].c[(size_t)i];
        rhs[(size_t)i] = y.c[(size_t)i];
    }
    auto sol = solve_modular(A, rhs, d.p, d.r);
    if (!sol) throw std::logic_error("basis_coords: basis does not span");
    return sol->particular;
}

GaloisRingElem find_trace_zero_unit(const GaloisRing& L) {
    // deterministic scan: first unit with zero trace whose residue is moved
    // by the Frobenius
    for (auto& x : L.all_elements()) {
        if (!L.is_unit(x)) continue;
        if (L.trace(x) != 0) continue;
        GaloisRingElem fr = L.frobenius(x);
        bool moved = false;
        for (size_t i = 0; i < x.c.size(); ++i)
            if (mod_reduce(fr.c[i] - x.c[i], L.base().p) != 0) moved = true;
        if (moved) return x;
    }
    throw std::logic_error("find_trace_zero_unit: none found");
}

}  // namespace

Mat UnramifiedDatum::embed(const GaloisRingElem& x, i64 corner) const {
    i64 mod = ipow(p, r);
    Mat out(m, mod);
    for (int i = 0; i < f; ++i) {
        GaloisRingElem prod = L.mul(basis[(size_t)i], x);
        auto coords = basis_coords(*this, prod);
        for (int j = 0; j < f; ++j) out.at(i, j) = coords[(size_t)j];
    }
    if (m > f) out.at(m - 1, m - 1) = mod_reduce(corner, mod);
    return out;
}

UnramifiedDatum tame_datum(const std::string& preset, i64 p, int r) {
    UnramifiedDatum d;
    d.p = p;
    d.r = r;
    d.f = 2;
    d.L = GaloisRing(p, r, 2);
    i64 mod = ipow(p, r);

    if (preset == "gl-unram-f2" || preset == "sl-norm1-f2") {
        d.kind = preset[0] == 'g' ? TameKind::GL : TameKind::SL;
        d.m = 2;
        d.basis = {d.L.one(), d.L.gen()};
        d.omega = find_trace_zero_unit(d.L);
        d.spec = d.kind == TameKind::GL ? GroupSpec::gl(2) : GroupSpec::sl(2);
        return d;
    }

    d.omega = find_trace_zero_unit(d.L);
    if (preset == "sp-quad-unram") {
        d.kind = TameKind::Sp;
        d.m = 2;
        // u_1 = 1, v_1 = omega * u_1^* with T(u_1 u_1^*) = 1; here L_+ is the
        // base ring so u_1^* = 1 and the pair is {1, omega}
        d.basis = {d.L.one(), d.omega};
        d.spec = GroupSpec::sp(2);
        // the symplectic pairing D(x,y) = (1/2) T(omega^{-1} x^rho y) must have
        // Gram J on this basis
        i64 inv2 = mod_inv(2, mod);
        GaloisRingElem winv = d.L.inv(d.omega);
        Mat gram(2, mod);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                GaloisRingElem v = d.L.mul(winv, d.L.mul(d.L.frobenius(d.basis[(size_t)i]), d.basis[(size_t)j]));
                gram.at(i, j) = mod_mul(inv2, d.L.trace(v), mod);
            }
        if (!(gram == d.spec.form(mod)))
            throw ConstraintViolatedError("tame_datum: symplectic basis Gram is not J");
        return d;
    }
    if (preset == "so-even-f2") {
        d.kind = TameKind::SOEven;
        d.m = 2;
        d.basis = {d.L.one(), d.omega};
        d.epsilon = 1;
        std::vector<std::vector<i64>> S(2, std::vector<i64>(2, 0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                GaloisRingElem v = d.L.mul(d.L.from_base(d.epsilon),
                                           d.L.mul(d.basis[(size_t)i], d.L.frobenius(d.basis[(size_t)j])));
                S[(size_t)i][(size_t)j] = d.L.trace(v);
            }
        d.spec = GroupSpec::so(S);
        if (mod_reduce(det_mod_p(S, p), p) == 0)
            throw ConstraintViolatedError("tame_datum: orthogonal form is not unimodular");
        return d;
    }
    if (preset == "so-odd-f2") {
        d.kind = TameKind::SOOdd;
        d.m = 3;
        d.basis = {d.L.one(), d.omega};
        d.epsilon = 1;
        d.eta = 1;
        std::vector<std::vector<i64>> S(3, std::vector<i64>(3, 0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                GaloisRingElem v = d.L.mul(d.L.from_base(d.epsilon),
                                           d.L.mul(d.basis[(size_t)i], d.L.frobenius(d.basis[(size_t)j])));
                S[(size_t)i][(size_t)j] = d.L.trace(v);
            }
        S[2][2] = d.eta;
        d.spec = GroupSpec::so(S);
        return d;
    }
    throw std::invalid_argument("tame_datum: unknown preset '" + preset + "'");
}

GaloisRingElem default_beta(const UnramifiedDatum& d) {
    if (d.kind == TameKind::GL) return d.L.gen();
    return d.omega;  // trace-zero generator; for Sp/SO it satisfies beta^rho = -beta
}

bool generator_test(const UnramifiedDatum& d, const GaloisRingElem& beta) {
    bool moved_by_all = true;
    GaloisRingElem cur = beta;
    for (int k = 1; k < d.f; ++k) {
        cur = d.L.frobenius(cur);
        bool same_residue = true;
        for (size_t i = 0; i < beta.c.size(); ++i)
            if (mod_reduce(cur.c[i] - beta.c[i], d.p) != 0) same_residue = false;
        if (same_residue) moved_by_all = false;
    }
    if (!moved_by_all) return false;

    // consequences: the reduced characteristic polynomial of the embedded
    // matrix is the minimal polynomial and is irreducible
    Mat emb = d.embed(beta);
    Mat block(d.f, d.p);
    for (int i = 0; i < d.f; ++i)
        for (int j = 0; j < d.f; ++j) block.at(i, j) = mod_reduce(emb.at(i, j), d.p);
    auto [chi, mu] = charpoly_minpoly(block);
    if (!(chi == mu)) throw std::logic_error("generator_test: charpoly != minpoly for a generator");
    if (!poly_is_irreducible(chi))
        throw std::logic_error("generator_test: reduced charpoly of a generator is reducible");
    return true;
}

TameThetaReport tame_cross_check(const UnramifiedDatum& d, const GaloisRingElem& beta, i64 budget) {
    TameThetaReport rep;
    rep.p = d.p;
    rep.r = d.r;
    switch (d.kind) {
        case TameKind::GL: rep.preset = "gl-unram-f2"; break;
        case TameKind::SL: rep.preset = "sl-norm1-f2"; break;
        case TameKind::Sp: rep.preset = "sp-quad-unram"; break;
        case TameKind::SOEven: rep.preset = "so-even-f2"; break;
        case TameKind::SOOdd: rep.preset = "so-odd-f2"; break;
    }
    i64 p = d.p;
    int r = d.r;
    i64 mod = ipow(p, r);
    LevelSplit split = LevelSplit::of(r);
    i64 pl = ipow(p, split.l);
    i64 plp = ipow(p, split.lp);

    // kind-specific constraints on beta
    if (d.kind == TameKind::SL && d.L.trace(beta) != 0)
        throw ConstraintViolatedError("tame_cross_check: SL needs T(beta) = 0");
    if (d.kind == TameKind::Sp || d.kind == TameKind::SOEven || d.kind == TameKind::SOOdd) {
        GaloisRingElem s = d.L.add(d.L.frobenius(beta), beta);
        if (!s.is_zero())
            throw ConstraintViolatedError("tame_cross_check: need beta^rho + beta = 0");
    }
    if (!generator_test(d, beta))
        throw ConstraintViolatedError("tame_cross_check: beta does not generate O_L");

    // the embedded beta must lie in the Lie algebra
    Mat emb_beta = d.embed(beta, 0);
    if (!d.spec.lie_member(emb_beta))
        throw ConstraintViolatedError("tame_cross_check: embedded beta escapes the Lie algebra");

    // the Galois-ring side group U
    std::vector<GaloisRingElem> units;
    for (auto& x : d.L.all_elements()) {
        if (!d.L.is_unit(x)) continue;
        switch (d.kind) {
            case TameKind::GL:
                units.push_back(x);
                break;
            case TameKind::SL:
                if (d.L.norm(x) == 1) units.push_back(x);
                break;
            case TameKind::Sp:
            case TameKind::SOEven:
            case TameKind::SOOdd: {
                GaloisRingElem nl = d.L.mul(x, d.L.frobenius(x));  // norm to L_+
                if (nl == d.L.one()) units.push_back(x);
                break;
            }
        }
    }
    rep.unit_group_order = units.size();

    std::map<u64, int> upos;
    for (size_t i = 0; i < units.size(); ++i) upos[d.L.pack(units[i])] = (int)i;
    GroupTable utab;
    utab.n = (int)units.size();
    utab.id = upos.at(d.L.pack(d.L.one()));
    utab.mul = [&](int a, int b) {
        return upos.at(d.L.pack(d.L.mul(units[(size_t)a], units[(size_t)b])));
    };
    AbelianBasis ubasis(utab);

    // constraint subgroup H = U cap (1 + p^l O_L) and the stated values
    std::vector<int> H;
    std::vector<CycScalar> c_lp, c_full;
    for (size_t i = 0; i < units.size(); ++i) {
        GaloisRingElem diff = d.L.sub(units[i], d.L.one());
        bool in_H = true;
        for (i64 c : diff.c)
            if (c % pl != 0) in_H = false;
        if (!in_H) continue;
        H.push_back((int)i);
        // x = (gamma - 1)/p^l, value tau(p^{-l'} T(beta x))
        std::vector<i64> xc;
        for (i64 c : diff.c) xc.push_back(c / pl);
        GaloisRingElem x = d.L.make(xc);
        c_lp.push_back(CycScalar::root(plp, d.L.trace(d.L.mul(beta, x))));
        // the full-precision form tau(p^{-r} T(beta (gamma - 1)))
        c_full.push_back(CycScalar::root(mod, d.L.trace(d.L.mul(beta, diff))));
    }
    rep.constraint_subgroup = H.size();
    for (size_t t = 0; t < H.size(); ++t)
        if (!(c_lp[t] == c_full[t])) rep.exponent_convention_diff = true;

    auto lchars = all_characters(utab, ubasis);
    std::vector<int> selected;
    for (size_t ci = 0; ci < lchars.size(); ++ci) {
        bool ok = true;
        for (size_t t = 0; t < H.size() && ok; ++t)
            if (!(lchars[ci].values[(size_t)H[t]] == c_lp[t])) ok = false;
        if (ok) selected.push_back((int)ci);
    }
    rep.lside_count = selected.size();

    // abstract family for the embedded beta
    Mat beta_mat = d.embed(beta, 0);
    ThetaFamily fam = theta_set(d.spec, p, r, beta_mat, budget);
    rep.abstract_count = fam.thetas.size();
    rep.counts_match = rep.abstract_count == rep.lside_count;

    // embedded unit group must equal the abstract centralizer
    std::vector<int> unit_to_local(units.size());
    {
        bool match = units.size() == fam.centralizer.elems.size();
        for (size_t i = 0; i < units.size() && match; ++i) {
            Mat g = d.embed(units[i], 1);
            auto it = fam.centralizer.idx.find(g.pack());
            if (it == fam.centralizer.idx.end()) match = false;
            else unit_to_local[i] = it->second;
        }
        rep.centralizer_match = match;
    }

    // the embedding preserves the form and the group membership
    rep.form_identities = true;
    if (d.kind != TameKind::GL && d.kind != TameKind::SL) {
        Mat F = d.spec.form(mod);
        for (size_t i = 0; i < units.size() && rep.form_identities; ++i) {
            Mat g = d.embed(units[i], 1);
            if (!(g * F * g.transposed() == F)) rep.form_identities = false;
        }
        if (!(emb_beta * F + F * emb_beta.transposed()).is_zero()) rep.form_identities = false;
    } else {
        for (size_t i = 0; i < units.size() && rep.form_identities; ++i)
            if (!d.spec.is_member(d.embed(units[i], 1))) rep.form_identities = false;
    }

    // transported characters coincide with the abstract family as sets
    if (rep.centralizer_match && rep.counts_match) {
        bool all_match = true;
        for (int ci : selected) {
            // value table on the centralizer in local indexing
            std::vector<CycScalar> table(fam.centralizer.elems.size());
            for (size_t i = 0; i < units.size(); ++i)
                table[(size_t)unit_to_local[i]] = lchars[(size_t)ci].values[i];
            bool found = false;
            for (auto& th : fam.thetas) {
                bool same = true;
                for (size_t e = 0; e < table.size() && same; ++e)
                    if (!(table[e] == th.values[e])) same = false;
                if (same) { found = true; break; }
            }
            if (!found) all_match = false;
        }
        rep.bijection_match = all_match;
    }
    return rep;
}

}  // namespace ringrep
