#include "ringrep/clifford.hpp"

#include <algorithm>
#include <map>

namespace ringrep {

PsiBeta::PsiBeta(const Mat& beta, i64 p, int r)
    : beta_(beta), p_(p), split_(LevelSplit::of(r)), mod_(ipow(p, r)) {
    if (beta.mod != mod_) throw std::invalid_argument("PsiBeta: beta must be given mod p^r");
}

CycScalar PsiBeta::eval(const Mat& k) const {
    if (k.mod != mod_) throw std::invalid_argument("PsiBeta::eval: wrong modulus");
    i64 pl = ipow(p_, split_.l);
    i64 plp = ipow(p_, split_.lp);
    Mat X(k.n, mod_);
    for (int e = 0; e < k.n * k.n; ++e) {
        i64 d = mod_reduce(k.a[(size_t)e] - (e % (k.n + 1) == 0 ? 1 : 0), mod_);
        if (d % pl != 0) throw NotInKernelError("PsiBeta::eval: element is not 1 mod p^l");
        X.a[(size_t)e] = d / pl;
    }
    return CycScalar::root(plp, X.trace_form(beta_));
}

OrbitDecomposition orbit_decomposition(const GroupSpec& spec, i64 p, int level, i64 budget) {
    FiniteGroupView view(spec, p, level, budget);
    LieLattice lie(spec, p, level);
    auto elements = lie.enumerate(level, budget);

    std::map<u128, size_t> pos;
    for (size_t i = 0; i < elements.size(); ++i) pos[elements[i].pack()] = i;

    auto gens = view.generators();
    std::vector<Mat> gen_mats, gen_invs;
    for (u32 g : gens) {
        gen_mats.push_back(view.mat(g));
        gen_invs.push_back(view.mat(view.inv(g)));
    }

    OrbitDecomposition out;
    out.level = level;
    std::vector<bool> done(elements.size(), false);
    for (auto& [seedkey, seedpos] : pos) {
        if (done[seedpos]) continue;
        // BFS orbit under conjugation by the generators
        std::vector<u128> orbit{seedkey};
        std::map<u128, bool> seen{{seedkey, true}};
        size_t head = 0;
        u128 minkey = seedkey;
        while (head < orbit.size()) {
            Mat x = Mat::unpack(orbit[head++], spec.n, ipow(p, level));
            for (size_t t = 0; t < gen_mats.size(); ++t) {
                Mat y = gen_mats[t] * x * gen_invs[t];
                u128 key = y.pack();
                if (!seen.count(key)) {
                    seen[key] = true;
                    orbit.push_back(key);
                    if (key < minkey) minkey = key;
                }
            }
        }
        for (u128 key : orbit) {
            auto it = pos.find(key);
            if (it == pos.end())
                throw std::logic_error("orbit_decomposition: orbit left the Lie algebra");
            done[it->second] = true;
        }
        Mat rep = Mat::unpack(minkey, spec.n, ipow(p, level));
        out.reps.push_back(rep);
        out.sizes.push_back((i64)orbit.size());
        out.flags.push_back(regularity_report(spec, p, rep));
    }
    return out;
}

std::vector<u32> stabilizer_group(const FiniteGroupView& view, const Mat& beta) {
    LevelSplit split = LevelSplit::of(view.r());
    return view.centralizer_indices(beta, split.lp);
}

MatGroup MatGroup::from_elements(std::vector<Mat> elems) {
    MatGroup g;
    if (elems.empty()) throw std::invalid_argument("MatGroup: empty");
    g.n = elems[0].n;
    g.mod = elems[0].mod;
    std::sort(elems.begin(), elems.end(),
              [](const Mat& a, const Mat& b) { return a.pack() < b.pack(); });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    g.elems = std::move(elems);
    for (size_t i = 0; i < g.elems.size(); ++i) g.idx.emplace(g.elems[i].pack(), (int)i);
    auto it = g.idx.find(Mat::identity(g.n, g.mod).pack());
    if (it == g.idx.end()) throw std::invalid_argument("MatGroup: identity missing");
    g.id = it->second;
    return g;
}

int MatGroup::mul(int a, int b) const {
    Mat prod = elems[(size_t)a] * elems[(size_t)b];
    auto it = idx.find(prod.pack());
    if (it == idx.end()) throw std::logic_error("MatGroup::mul: not closed");
    return it->second;
}

int MatGroup::index_of(const Mat& m) const {
    auto it = idx.find(m.pack());
    if (it == idx.end()) throw std::out_of_range("MatGroup::index_of: not a member");
    return it->second;
}

GroupTable MatGroup::table() const {
    GroupTable t;
    t.n = (int)elems.size();
    t.id = id;
    t.mul = [this](int a, int b) { return mul(a, b); };
    return t;
}

MatGroup centralizer_unit_group(const GroupSpec& spec, i64 p, int r, const Mat& beta, i64 budget) {
    int n = spec.n;
    i64 m = ipow(p, r);
    Mat b = beta.reduced(m);
    // matrix commutant of beta over Z/p^r
    std::vector<std::vector<i64>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<i64> row((size_t)(n * n), 0);
            for (int k = 0; k < n; ++k) {
                row[(size_t)(i * n + k)] = mod_reduce(row[(size_t)(i * n + k)] + b.at(k, j), m);
                row[(size_t)(k * n + j)] = mod_reduce(row[(size_t)(k * n + j)] - b.at(i, k), m);
            }
            rows.push_back(std::move(row));
        }
    auto ker = kernel_modular(rows, p, r);
    u128 count = 1;
    for (i64 o : ker.kernel_orders) {
        count *= (u128)o;
        if (count > (u128)budget)
            throw BudgetExceededError("centralizer_unit_group: commutant too large");
    }
    std::vector<Mat> members;
    std::vector<i64> tuple(ker.kernel.size(), 0);
    while (true) {
        Mat X(n, m);
        for (size_t t = 0; t < tuple.size(); ++t) {
            if (tuple[t] == 0) continue;
            for (int e = 0; e < n * n; ++e)
                X.a[(size_t)e] = mod_reduce(X.a[(size_t)e] + tuple[t] * ker.kernel[t][(size_t)e], m);
        }
        if (spec.is_member(X)) members.push_back(X);
        size_t k = 0;
        while (k < tuple.size()) {
            if (++tuple[k] < ker.kernel_orders[k]) break;
            tuple[k] = 0;
            ++k;
        }
        if (tuple.empty() || k == tuple.size()) break;
    }
    return MatGroup::from_elements(std::move(members));
}

ThetaFamily theta_set(const GroupSpec& spec, i64 p, int r, const Mat& beta, i64 budget) {
    LevelSplit split = LevelSplit::of(r);
    i64 pl = ipow(p, split.l);
    MatGroup cen = centralizer_unit_group(spec, p, r, beta, budget);
    GroupTable tab = cen.table();
    if (!tab.is_abelian())
        throw IncompatibleError("theta_set: centralizer is not commutative");

    PsiBeta psi(beta.reduced(ipow(p, r)), p, r);
    std::vector<int> inter;
    std::vector<CycScalar> psi_on_inter;
    for (size_t i = 0; i < cen.elems.size(); ++i) {
        if (cen.elems[i].reduced(pl) == Mat::identity(spec.n, pl)) {
            inter.push_back((int)i);
            psi_on_inter.push_back(psi.eval(cen.elems[i]));
        }
    }
    // psi_beta must restrict to a character of the intersection
    for (size_t a = 0; a < inter.size(); ++a)
        for (size_t b = 0; b < inter.size(); ++b) {
            int prod = cen.mul(inter[(size_t)a], inter[(size_t)b]);
            auto it = std::find(inter.begin(), inter.end(), prod);
            if (it == inter.end())
                throw IncompatibleError("theta_set: intersection not closed");
            CycScalar lhs = psi_on_inter[(size_t)(it - inter.begin())];
            if (!(lhs == psi_on_inter[a] * psi_on_inter[b]))
                throw IncompatibleError("theta_set: psi_beta is not a character of the intersection");
        }

    AbelianBasis basis(tab);
    auto all = all_characters(tab, basis);
    ThetaFamily fam{std::move(cen), std::move(basis), std::move(inter), {}};
    for (auto& chi : all) {
        bool match = true;
        for (size_t t = 0; t < fam.intersection.size(); ++t)
            if (!(chi.values[(size_t)fam.intersection[t]] == psi_on_inter[t])) {
                match = false;
                break;
            }
        if (match) fam.thetas.push_back(chi);
    }
    size_t expect = fam.centralizer.elems.size() / fam.intersection.size();
    if (fam.thetas.size() != expect)
        throw std::logic_error("theta_set: count differs from the index of the intersection");
    return fam;
}

ZGroupData z_group_and_psi_rho(const FiniteGroupView& view, const Mat& beta) {
    int r = view.r();
    if (r % 2 == 0 || r < 3) throw std::invalid_argument("z_group_and_psi_rho: need odd r >= 3");
    int l = (r + 1) / 2;
    i64 p = view.p();
    i64 plm1 = ipow(p, l - 1);
    i64 pl = ipow(p, l);
    i64 mod = view.mod();
    int n = view.spec().n;

    Mat beta_p = beta.reduced(p);
    CentralizerLie gbeta = centralizer_lie(view.lie(), beta_p, 1);

    // solve for coordinates of Xbar in the g_beta(F_p) basis
    auto coords_in_gbeta = [&](const Mat& Xbar) -> std::optional<std::vector<i64>> {
        std::vector<std::vector<i64>> A((size_t)(n * n), std::vector<i64>(gbeta.basis.size(), 0));
        std::vector<i64> rhs((size_t)(n * n), 0);
        for (int e = 0; e < n * n; ++e) {
            for (size_t t = 0; t < gbeta.basis.size(); ++t) A[(size_t)e][t] = gbeta.basis[t].a[(size_t)e];
            rhs[(size_t)e] = Xbar.a[(size_t)e];
        }
        auto sol = solve_modular(A, rhs, p, 1);
        if (!sol) return std::nullopt;
        return sol->particular;
    };

    ZGroupData out;
    out.gbeta_f_basis = gbeta.basis;

    i64 inv2 = mod_inv(2, pl);
    auto kernel = view.kernel_indices(l - 1);
    std::vector<std::vector<i64>> z_coords;
    std::vector<CycScalar> psi_tilde;
    for (u32 ki : kernel) {
        Mat k = view.mat(ki);
        Mat X(n, mod);
        for (int e = 0; e < n * n; ++e) {
            i64 d = mod_reduce(k.a[(size_t)e] - (e % (n + 1) == 0 ? 1 : 0), mod);
            X.a[(size_t)e] = d / plm1;
        }
        Mat Xbar = X.reduced(p);
        auto c = coords_in_gbeta(Xbar);
        if (!c) continue;
        out.z_indices.push_back(ki);
        z_coords.push_back(*c);
        // tau(p^{-l} B(X, beta) - (2p)^{-1} B(X^2, beta)), exact exponent mod p^l
        i64 eb = mod_reduce(X.trace_form(beta), pl);
        i64 eb2 = mod_reduce(mod_reduce((X * X).trace_form(beta), p) * inv2, p);
        psi_tilde.push_back(CycScalar::root(pl, eb - plm1 * eb2));
    }

    // one psi_{beta, rho} per character rho of g_beta(F_p)
    size_t dim = gbeta.basis.size();
    std::vector<i64> rho((size_t)dim, 0);
    while (true) {
        std::vector<CycScalar> vals;
        vals.reserve(out.z_indices.size());
        for (size_t t = 0; t < out.z_indices.size(); ++t) {
            i64 e = 0;
            for (size_t i = 0; i < dim; ++i) e = mod_reduce(e + rho[i] * z_coords[t][i], p);
            vals.push_back(psi_tilde[t] * CycScalar::root(p, e));
        }
        out.psi_rho.push_back(std::move(vals));
        out.rho_exponents.push_back(rho);
        size_t k = 0;
        while (k < dim) {
            if (++rho[k] < p) break;
            rho[k] = 0;
            ++k;
        }
        if (dim == 0 || k == dim) break;
    }

    // multiplicativity of every psi_{beta, rho} on Z, exhaustively
    std::map<u32, size_t> zpos;
    for (size_t i = 0; i < out.z_indices.size(); ++i) zpos[out.z_indices[i]] = i;
    for (size_t a = 0; a < out.z_indices.size(); ++a)
        for (size_t b = 0; b < out.z_indices.size(); ++b) {
            u32 prod = view.mul(out.z_indices[a], out.z_indices[b]);
            auto it = zpos.find(prod);
            if (it == zpos.end())
                throw NotMultiplicativeError("z_group_and_psi_rho: Z is not closed under product");
            for (auto& psi : out.psi_rho)
                if (!(psi[it->second] == psi[a] * psi[b]))
                    throw NotMultiplicativeError("z_group_and_psi_rho: psi_{beta,rho} is not multiplicative");
        }
    return out;
}

SigmaEven sigma_even(const FiniteGroupView& view, const Mat& beta, const ThetaFamily& fam,
                     size_t theta_index) {
    int r = view.r();
    if (r % 2 != 0) throw std::invalid_argument("sigma_even: r must be even");
    LevelSplit split = LevelSplit::of(r);
    i64 pl = ipow(view.p(), split.l);
    const auto& theta = fam.thetas.at(theta_index);

    auto stab = stabilizer_group(view, beta);
    auto klv = view.kernel_indices(split.l);
    // the stabilizer must factor as G_beta * K_l
    size_t inter = fam.intersection.size();
    size_t product_count = fam.centralizer.elems.size() * klv.size() / inter;
    if (product_count != stab.size())
        throw FactorizationMismatchError(
            "sigma_even: |G_beta| |K_l| / |G_beta cap K_l| != |stabilizer| (" +
            std::to_string(product_count) + " vs " + std::to_string(stab.size()) + ")");

    PsiBeta psi(beta, view.p(), r);
    SigmaEven sig;
    sig.domain = stab;
    sig.values.reserve(stab.size());
    for (u32 x : stab) {
        Mat xm = view.mat(x);
        bool found = false;
        CycScalar value;
        for (size_t gi = 0; gi < fam.centralizer.elems.size(); ++gi) {
            Mat h = fam.centralizer.elems[gi].inverse() * xm;
            if (!(h.reduced(pl) == Mat::identity(xm.n, pl))) continue;
            CycScalar v = theta.values[gi] * psi.eval(h);
            if (!found) {
                value = v;
                found = true;
            } else if (!(v == value)) {
                throw std::logic_error("sigma_even: value depends on the factorization");
            }
        }
        if (!found) throw FactorizationMismatchError("sigma_even: stabilizer element has no factorization");
        sig.values.push_back(value);
    }
    return sig;
}

CycScalar SigmaEven::at(const FiniteGroupView& view, u32 elem) const {
    (void)view;
    auto it = std::lower_bound(domain.begin(), domain.end(), elem);
    if (it == domain.end() || *it != elem)
        throw std::out_of_range("SigmaEven::at: element outside the domain");
    return values[(size_t)(it - domain.begin())];
}

}  // namespace ringrep
