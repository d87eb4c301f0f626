#include "ringrep/group_view.hpp"

#include <algorithm>

namespace ringrep {

namespace {

// Recursive row-by-row enumeration of {g : g F g^t = F} over F_p, with det
// filtering applied by the caller.  Rows are checked against all completed
// rows as soon as they are placed, which prunes hard enough for the desk
// sizes used here.
void enumerate_form_group_rec(const Mat& F, i64 p, int row, Mat& g,
                              std::vector<u128>& out, const GroupSpec& spec) {
    int n = F.n;
    if (row == n) {
        if (spec.family == Family::SO && g.det() % p != 1 % p) return;
        if (g.det() % p == 0) return;
        out.push_back(g.pack());
        return;
    }
    i64 total = ipow(p, n);
    for (i64 mask = 0; mask < total; ++mask) {
        i64 mm = mask;
        for (int j = 0; j < n; ++j) { g.at(row, j) = mm % p; mm /= p; }
        bool ok = true;
        for (int i = 0; i <= row && ok; ++i) {
            i64 acc = 0;
            for (int a = 0; a < n; ++a) {
                if (g.at(i, a) == 0) continue;
                for (int b = 0; b < n; ++b)
                    acc = mod_reduce(acc + g.at(i, a) * F.at(a, b) % p * g.at(row, b), p);
            }
            if (acc != mod_reduce(F.at(i, row), p)) ok = false;
        }
        if (ok) enumerate_form_group_rec(F, p, row + 1, g, out, spec);
    }
}

std::vector<u128> enumerate_level1(const GroupSpec& spec, i64 p, i64 budget) {
    int n = spec.n;
    std::vector<u128> keys;
    u128 total = 1;
    bool small_enough = true;
    for (int i = 0; i < n * n; ++i) {
        total *= (u128)p;
        if (total > (u128)8000000) { small_enough = false; break; }
    }
    if (small_enough) {
        for (u128 mask = 0; mask < total; ++mask) {
            Mat g = Mat::unpack(mask, n, p);
            if (spec.is_member(g)) keys.push_back(mask);
            if ((i64)keys.size() > budget)
                throw BudgetExceededError("enumerate_group: level-1 group exceeds budget");
        }
    } else if (spec.family == Family::Sp || spec.family == Family::SO) {
        Mat F = spec.form(p);
        Mat g(n, p);
        enumerate_form_group_rec(F, p, 0, g, keys, spec);
        if ((i64)keys.size() > budget)
            throw BudgetExceededError("enumerate_group: level-1 group exceeds budget");
    } else {
        throw BudgetExceededError("enumerate_group: level-1 search space too large");
    }
    return keys;
}

}  // namespace

FiniteGroupView::FiniteGroupView(const GroupSpec& spec, i64 p, int r, i64 budget)
    : spec_(spec), p_(p), r_(r), mod_(ipow(p, r)), lie_(spec, p, r) {
    int n = spec.n;
    u128 direct_total = 1;
    bool direct = true;
    for (int i = 0; i < n * n; ++i) {
        direct_total *= (u128)mod_;
        if (direct_total > (u128)8000000) { direct = false; break; }
    }

    std::vector<u128> keys;
    if (direct) {
        for (u128 mask = 0; mask < direct_total; ++mask) {
            Mat g = Mat::unpack(mask, n, mod_);
            if (spec.is_member(g)) keys.push_back(mask);
            if ((i64)keys.size() > budget) throw BudgetExceededError("enumerate_group: budget exceeded");
        }
    } else {
        // layered lifting: level-1 group, then one lift per fibre times the
        // congruence-kernel coset
        keys = enumerate_level1(spec, p, budget);
        const auto& lie1 = lie_.basis(1);
        for (int level = 1; level < r; ++level) {
            i64 mcur = ipow(p, level);
            i64 mnext = ipow(p, level + 1);
            if ((u128)keys.size() * (u128)ipow(p, lie_.dim()) > (u128)budget)
                throw BudgetExceededError("enumerate_group: budget exceeded during lifting");
            std::vector<u128> next;
            next.reserve(keys.size() * (size_t)ipow(p, lie_.dim()));
            for (u128 key : keys) {
                Mat g = Mat::unpack(key, n, mcur);
                // canonical lift, then correct to an exact member mod p^{l+1}
                Mat gl(n, mnext);
                for (int e = 0; e < n * n; ++e) gl.a[(size_t)e] = g.a[(size_t)e];
                Mat corrected = gl;
                if (spec_.family == Family::SL) {
                    i64 d = gl.det();
                    i64 defect = mod_reduce(d - 1, mnext) / mcur;  // digit at p^level
                    // subtract defect from a diagonal direction: multiply by 1 - p^l*defect*E00-ish
                    Mat delta(n, mnext);
                    delta.at(0, 0) = mod_reduce(-defect, p);
                    corrected = gl * (Mat::identity(n, mnext) + delta.scaled(mcur));
                } else if (spec_.family == Family::Sp || spec_.family == Family::SO) {
                    Mat F = spec_.form(mnext);
                    Mat defect = gl * F * gl.transposed() - F;
                    Mat E(n, p);
                    for (int e = 0; e < n * n; ++e)
                        E.a[(size_t)e] = mod_reduce(defect.a[(size_t)e] / mcur, p);
                    Mat gp = g.reduced(p);
                    Mat gpi = gp.inverse();
                    Mat theta = (gpi * E * gpi.transposed()).scaled(-1);
                    // solve Delta * F + F * Delta^t = theta over F_p
                    Mat Fp = spec_.form(p);
                    std::vector<std::vector<i64>> A((size_t)(n * n), std::vector<i64>((size_t)(n * n), 0));
                    std::vector<i64> rhs((size_t)(n * n), 0);
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) {
                            auto& row = A[(size_t)(a * n + b)];
                            for (int k = 0; k < n; ++k) {
                                row[(size_t)(a * n + k)] = mod_reduce(row[(size_t)(a * n + k)] + Fp.at(k, b), p);
                                row[(size_t)(b * n + k)] = mod_reduce(row[(size_t)(b * n + k)] + Fp.at(a, k), p);
                            }
                            rhs[(size_t)(a * n + b)] = theta.at(a, b);
                        }
                    auto sol = solve_modular(A, rhs, p, 1);
                    if (!sol) throw std::runtime_error("enumerate_group: lift step inconsistent");
                    Mat delta(n, mnext);
                    for (int e = 0; e < n * n; ++e) delta.a[(size_t)e] = sol->particular[(size_t)e];
                    corrected = gl * (Mat::identity(n, mnext) + delta.scaled(mcur));
                }
                if (!spec_.is_member(corrected))
                    throw std::runtime_error("enumerate_group: lift correction failed");
                // fibre = corrected * (1 + p^level X), X over the level-1 Lie basis
                std::vector<i64> coeff((size_t)lie_.dim(), 0);
                while (true) {
                    Mat X(n, mnext);
                    for (size_t t = 0; t < coeff.size(); ++t)
                        if (coeff[t] != 0)
                            for (int e = 0; e < n * n; ++e)
                                X.a[(size_t)e] = mod_reduce(X.a[(size_t)e] + coeff[t] * lie1[t].a[(size_t)e], mnext);
                    Mat memb = corrected * (Mat::identity(n, mnext) + X.scaled(mcur));
                    next.push_back(memb.pack());
                    size_t k = 0;
                    while (k < coeff.size()) {
                        if (++coeff[k] < p) break;
                        coeff[k] = 0;
                        ++k;
                    }
                    if (k == coeff.size()) break;
                }
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            keys = std::move(next);
        }
    }
    finalize(std::move(keys));
}

void FiniteGroupView::finalize(std::vector<u128>&& keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    elems_ = std::move(keys);
    index_.reserve(elems_.size() * 2);
    for (u32 i = 0; i < (u32)elems_.size(); ++i) index_.emplace(elems_[i], i);
    Mat I = Mat::identity(spec_.n, mod_);
    auto it = index_.find(I.pack());
    if (it == index_.end()) throw std::runtime_error("FiniteGroupView: identity missing");
    id_ = it->second;
    invtab_.resize(elems_.size());
    for (u32 i = 0; i < (u32)elems_.size(); ++i) {
        Mat inv = mat(i).inverse();
        auto jt = index_.find(inv.pack());
        if (jt == index_.end()) throw std::runtime_error("FiniteGroupView: not closed under inverse");
        invtab_[i] = jt->second;
    }
}

u32 FiniteGroupView::index_of(const Mat& m) const {
    auto it = index_.find(m.pack());
    if (it == index_.end()) throw std::out_of_range("FiniteGroupView::index_of: not an element");
    return it->second;
}

bool FiniteGroupView::contains(const Mat& m) const {
    return index_.find(m.pack()) != index_.end();
}

u32 FiniteGroupView::mul(u32 a, u32 b) const {
    Mat prod = mat(a) * mat(b);
    auto it = index_.find(prod.pack());
    if (it == index_.end()) throw std::logic_error("FiniteGroupView::mul: not closed");
    return it->second;
}

i64 FiniteGroupView::order_of(u32 a) const {
    i64 o = 1;
    u32 x = a;
    while (x != id_) {
        x = mul(x, a);
        ++o;
    }
    return o;
}

const std::vector<u32>& FiniteGroupView::generators() const {
    if (!gens_.empty() || size() == 1) return gens_;
    std::vector<bool> in_closure(size(), false);
    std::vector<u32> closure{id_};
    in_closure[id_] = true;
    for (u32 cand = 0; cand < (u32)size(); ++cand) {
        if (closure.size() == size()) break;
        if (in_closure[cand]) continue;
        gens_.push_back(cand);
        // extend closure with the new generator
        size_t head = 0;
        std::vector<u32> work = closure;
        while (head < work.size()) {
            u32 x = work[head++];
            for (u32 g : gens_) {
                u32 y = mul(x, g);
                if (!in_closure[y]) {
                    in_closure[y] = true;
                    closure.push_back(y);
                    work.push_back(y);
                }
            }
        }
    }
    return gens_;
}

std::vector<u32> FiniteGroupView::kernel_indices(int level) const {
    i64 ml = ipow(p_, level);
    std::vector<u32> out;
    Mat I = Mat::identity(spec_.n, ml);
    u128 ikey = I.pack();
    for (u32 i = 0; i < (u32)size(); ++i)
        if (reduced_key(i, level) == ikey) out.push_back(i);
    return out;
}

std::vector<u32> FiniteGroupView::centralizer_indices(const Mat& beta, int level) const {
    i64 ml = ipow(p_, level);
    std::vector<u32> out;
    Mat b = beta.reduced(ml);
    for (u32 i = 0; i < (u32)size(); ++i) {
        Mat g = mat(i).reduced(ml);
        if (g * b == b * g) out.push_back(i);
    }
    return out;
}

u128 FiniteGroupView::reduced_key(u32 i, int level) const {
    return mat(i).reduced(ipow(p_, level)).pack();
}

CentralizerLie centralizer_lie(const LieLattice& lie, const Mat& beta, int level) {
    i64 p = lie.p();
    i64 ml = ipow(p, level);
    int n = lie.spec().n;
    Mat b = beta.reduced(ml);
    std::vector<std::vector<i64>> rows = lie_equations(lie.spec(), ml);
    // commutator equations: (X b - b X)_{ij} = 0
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<i64> row((size_t)(n * n), 0);
            for (int k = 0; k < n; ++k) {
                row[(size_t)(i * n + k)] = mod_reduce(row[(size_t)(i * n + k)] + b.at(k, j), ml);
                row[(size_t)(k * n + j)] = mod_reduce(row[(size_t)(k * n + j)] - b.at(i, k), ml);
            }
            rows.push_back(std::move(row));
        }
    auto ker = kernel_modular(rows, p, level);
    CentralizerLie out;
    for (size_t t = 0; t < ker.kernel.size(); ++t) {
        if (ker.kernel_orders[t] != ml) continue;
        Mat X(n, ml);
        bool zero = true;
        for (int e = 0; e < n * n; ++e) {
            X.a[(size_t)e] = ker.kernel[t][(size_t)e];
            if (X.a[(size_t)e] != 0) zero = false;
        }
        if (!zero) out.basis.push_back(X);
    }
    out.dim = (int)out.basis.size();
    // the solution set must be free for the uses in this library
    u128 total = 1;
    for (i64 o : ker.kernel_orders) total *= (u128)o;
    u128 expect = 1;
    for (int i = 0; i < out.dim; ++i) expect *= (u128)ml;
    if (total != expect)
        throw std::runtime_error("centralizer_lie: centralizer solution set is not free at this level");
    return out;
}

RegularityReport regularity_report(const GroupSpec& spec, i64 p, const Mat& beta) {
    RegularityReport rep;
    Mat bp = beta.reduced(p);
    LieLattice lie(spec, p, 1);
    auto cent = centralizer_lie(lie, bp, 1);
    rep.dim_centralizer = cent.dim;
    rep.smoothly_regular = cent.dim == spec.rank();
    auto [chi, mu] = charpoly_minpoly(bp);
    rep.char_eq_min = chi == mu;

    FiniteGroupView g1(spec, p, 1);
    auto cidx = g1.centralizer_indices(bp, 1);
    rep.centralizer_abelian = true;
    for (size_t a = 0; a < cidx.size() && rep.centralizer_abelian; ++a)
        for (size_t b = a + 1; b < cidx.size(); ++b)
            if (g1.mul(cidx[a], cidx[b]) != g1.mul(cidx[b], cidx[a])) {
                rep.centralizer_abelian = false;
                break;
            }
    rep.centralizer_centralizes_lie = true;
    for (u32 gi : cidx) {
        Mat g = g1.mat(gi);
        Mat ginv = g.inverse();
        for (const Mat& Y : cent.basis)
            if (!(g * Y * ginv == Y)) {
                rep.centralizer_centralizes_lie = false;
                break;
            }
        if (!rep.centralizer_centralizes_lie) break;
    }
    return rep;
}

Mat beta_preset(const std::string& name, const GroupSpec& spec, i64 p, int r) {
    i64 m = ipow(p, r);
    int n = spec.n;
    Mat beta(n, m);
    if (name == "elliptic-unramified") {
        if (n != 2) throw std::invalid_argument("beta_preset: elliptic-unramified needs n = 2");
        // companion matrix of t^2 - nu for the smallest nonresidue nu
        i64 nu = 0;
        for (i64 c = 2; c < p; ++c) {
            bool residue = false;
            for (i64 x = 1; x < p; ++x)
                if (x * x % p == c) { residue = true; break; }
            if (!residue) { nu = c; break; }
        }
        beta.at(0, 1) = nu;
        beta.at(1, 0) = 1;
    } else if (name == "split-regular") {
        if (n == 2) {
            beta.at(0, 0) = 1;
            beta.at(1, 1) = mod_reduce(-1, m);
        } else {
            // distinct residues summing to zero
            if (p < n) throw std::invalid_argument("beta_preset: split-regular needs p >= n");
            i64 sum = 0;
            for (int i = 0; i + 1 < n; ++i) { beta.at(i, i) = i; sum += i; }
            beta.at(n - 1, n - 1) = mod_reduce(-sum, m);
            if (mod_reduce(-sum, (i64)p) < (i64)(n - 1))
                throw std::invalid_argument("beta_preset: split-regular eigenvalues collide mod p");
        }
    } else if (name == "nilpotent-regular") {
        for (int i = 0; i + 1 < n; ++i) beta.at(i, i + 1) = 1;
    } else if (name == "so4-counterexample") {
        if (!(spec.family == Family::SO && n == 4))
            throw std::invalid_argument("beta_preset: so4-counterexample needs SO_4");
        beta = Mat::from_rows(m, {{0, 1, 1, 0}, {0, 0, 0, -1}, {0, 0, 0, -1}, {0, 0, 0, 0}});
    } else {
        throw std::invalid_argument("beta_preset: unknown preset '" + name + "'");
    }
    if (!spec.lie_member(beta))
        throw std::invalid_argument("beta_preset: preset '" + name + "' is not in the Lie algebra of " + spec.name());
    return beta;
}

}  // namespace ringrep
