#include "ringrep/heisenberg.hpp"

#include <algorithm>
#include <random>

namespace ringrep {

// ---------------------------------------------------------------------------
// dense complex helpers
// ---------------------------------------------------------------------------

CMat cmat_identity(int dim) {
    CMat m((size_t)(dim * dim), cplx(0, 0));
    for (int i = 0; i < dim; ++i) m[(size_t)(i * dim + i)] = 1.0;
    return m;
}

CMat cmat_mul(const CMat& a, const CMat& b, int dim) {
    CMat c((size_t)(dim * dim), cplx(0, 0));
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            cplx v = a[(size_t)(i * dim + k)];
            if (v == cplx(0, 0)) continue;
            for (int j = 0; j < dim; ++j) c[(size_t)(i * dim + j)] += v * b[(size_t)(k * dim + j)];
        }
    return c;
}

cplx cmat_det(const CMat& a, int dim) {
    CMat m = a;
    cplx det = 1.0;
    for (int c = 0; c < dim; ++c) {
        int piv = -1;
        double best = 1e-300;
        for (int i = c; i < dim; ++i)
            if (std::abs(m[(size_t)(i * dim + c)]) > best) {
                best = std::abs(m[(size_t)(i * dim + c)]);
                piv = i;
            }
        if (piv < 0) return 0.0;
        if (piv != c) {
            for (int j = 0; j < dim; ++j) std::swap(m[(size_t)(piv * dim + j)], m[(size_t)(c * dim + j)]);
            det = -det;
        }
        det *= m[(size_t)(c * dim + c)];
        cplx inv = 1.0 / m[(size_t)(c * dim + c)];
        for (int i = c + 1; i < dim; ++i) {
            cplx f = m[(size_t)(i * dim + c)] * inv;
            if (f == cplx(0, 0)) continue;
            for (int j = c; j < dim; ++j) m[(size_t)(i * dim + j)] -= f * m[(size_t)(c * dim + j)];
        }
    }
    return det;
}

CMat cmat_inv(const CMat& a, int dim) {
    CMat m = a;
    CMat inv = cmat_identity(dim);
    for (int c = 0; c < dim; ++c) {
        int piv = -1;
        double best = 1e-300;
        for (int i = c; i < dim; ++i)
            if (std::abs(m[(size_t)(i * dim + c)]) > best) {
                best = std::abs(m[(size_t)(i * dim + c)]);
                piv = i;
            }
        if (piv < 0) throw std::runtime_error("cmat_inv: singular matrix");
        if (piv != c)
            for (int j = 0; j < dim; ++j) {
                std::swap(m[(size_t)(piv * dim + j)], m[(size_t)(c * dim + j)]);
                std::swap(inv[(size_t)(piv * dim + j)], inv[(size_t)(c * dim + j)]);
            }
        cplx f0 = 1.0 / m[(size_t)(c * dim + c)];
        for (int j = 0; j < dim; ++j) {
            m[(size_t)(c * dim + j)] *= f0;
            inv[(size_t)(c * dim + j)] *= f0;
        }
        for (int i = 0; i < dim; ++i) {
            if (i == c) continue;
            cplx f = m[(size_t)(i * dim + c)];
            if (f == cplx(0, 0)) continue;
            for (int j = 0; j < dim; ++j) {
                m[(size_t)(i * dim + j)] -= f * m[(size_t)(c * dim + j)];
                inv[(size_t)(i * dim + j)] -= f * inv[(size_t)(c * dim + j)];
            }
        }
    }
    return inv;
}

cplx cmat_trace(const CMat& a, int dim) {
    cplx t = 0.0;
    for (int i = 0; i < dim; ++i) t += a[(size_t)(i * dim + i)];
    return t;
}

double cmat_dist(const CMat& a, const CMat& b, int dim) {
    double d = 0;
    for (int i = 0; i < dim * dim; ++i) d = std::max(d, std::abs(a[(size_t)i] - b[(size_t)i]));
    return d;
}

CMat cmat_scale(const CMat& a, cplx s) {
    CMat c = a;
    for (auto& v : c) v *= s;
    return c;
}

// ---------------------------------------------------------------------------
// SymplecticSpace
// ---------------------------------------------------------------------------

namespace {

// F_p row reduction returning the rank; rows are modified in place.
int fp_rank(std::vector<std::vector<i64>>& rows, i64 p) {
    if (rows.empty()) return 0;
    size_t ncols = rows[0].size();
    size_t rpos = 0;
    for (size_t c = 0; c < ncols && rpos < rows.size(); ++c) {
        size_t piv = rpos;
        while (piv < rows.size() && mod_reduce(rows[piv][c], p) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rpos]);
        i64 inv = mod_inv(mod_reduce(rows[rpos][c], p), p);
        for (auto& x : rows[rpos]) x = mod_reduce(x * inv, p);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rpos) continue;
            i64 f = mod_reduce(rows[i][c], p);
            if (f == 0) continue;
            for (size_t j = 0; j < ncols; ++j) rows[i][j] = mod_reduce(rows[i][j] - f * rows[rpos][j], p);
        }
        ++rpos;
    }
    return (int)rpos;
}

std::vector<i64> mat_to_vec(const Mat& m) {
    std::vector<i64> v((size_t)(m.n * m.n));
    for (int e = 0; e < m.n * m.n; ++e) v[(size_t)e] = m.a[(size_t)e];
    return v;
}

}  // namespace

SymplecticSpace::SymplecticSpace(i64 p, std::vector<Mat> ambient_basis, const Mat& beta_bar)
    : p_(p), ambient_(std::move(ambient_basis)), beta_(beta_bar.reduced(p)) {
    build({});
}

SymplecticSpace::SymplecticSpace(i64 p, std::vector<Mat> ambient_basis, const Mat& beta_bar,
                                 std::vector<Mat> complement)
    : p_(p), ambient_(std::move(ambient_basis)), beta_(beta_bar.reduced(p)) {
    build(std::move(complement));
}

void SymplecticSpace::build(std::vector<Mat> complement_or_empty) {
    int n = beta_.n;
    int da = (int)ambient_.size();

    // central subalgebra: solutions of [X, beta] = 0 inside span(ambient)
    {
        std::vector<std::vector<i64>> A((size_t)(n * n), std::vector<i64>((size_t)da, 0));
        for (int t = 0; t < da; ++t) {
            Mat br = ambient_[(size_t)t].reduced(p_).bracket(beta_);
            for (int e = 0; e < n * n; ++e) A[(size_t)e][(size_t)t] = br.a[(size_t)e];
        }
        auto ker = kernel_modular(A, p_, 1);
        for (size_t t = 0; t < ker.kernel.size(); ++t) {
            if (ker.kernel_orders[t] != p_) continue;
            Mat Z(n, p_);
            for (int j = 0; j < da; ++j)
                if (ker.kernel[t][(size_t)j] != 0)
                    Z = Z + ambient_[(size_t)j].reduced(p_).scaled(ker.kernel[t][(size_t)j]);
            if (!Z.is_zero()) central_.push_back(Z);
        }
    }
    int k = (int)central_.size();
    d_ = da - k;
    if (d_ <= 0) throw DegenerateFormError("SymplecticSpace: centralizer is the whole algebra");

    if (!complement_or_empty.empty()) {
        complement_ = std::move(complement_or_empty);
        if ((int)complement_.size() != d_)
            throw std::invalid_argument("SymplecticSpace: complement has wrong size");
    } else {
        // trace-form orthogonal complement of the centralizer, when it is a
        // genuine complement; deterministic basis extension otherwise
        std::vector<std::vector<i64>> A((size_t)k, std::vector<i64>((size_t)da, 0));
        for (int i = 0; i < k; ++i)
            for (int t = 0; t < da; ++t)
                A[(size_t)i][(size_t)t] =
                    mod_reduce(ambient_[(size_t)t].reduced(p_).trace_form(central_[(size_t)i]), p_);
        auto ker = kernel_modular(A, p_, 1);
        std::vector<Mat> ortho;
        for (size_t t = 0; t < ker.kernel.size(); ++t) {
            if (ker.kernel_orders[t] != p_) continue;
            Mat W(n, p_);
            for (int j = 0; j < da; ++j)
                if (ker.kernel[t][(size_t)j] != 0)
                    W = W + ambient_[(size_t)j].reduced(p_).scaled(ker.kernel[t][(size_t)j]);
            ortho.push_back(W);
        }
        bool genuine = (int)ortho.size() == d_;
        if (genuine) {
            std::vector<std::vector<i64>> rows;
            for (const Mat& z : central_) rows.push_back(mat_to_vec(z));
            for (const Mat& w : ortho) rows.push_back(mat_to_vec(w));
            genuine = fp_rank(rows, p_) == da;
        }
        if (genuine) {
            complement_ = std::move(ortho);
        } else {
            std::vector<std::vector<i64>> rows;
            for (const Mat& z : central_) rows.push_back(mat_to_vec(z));
            int rank = k;
            for (const Mat& cand : ambient_) {
                auto trial = rows;
                trial.push_back(mat_to_vec(cand.reduced(p_)));
                if (fp_rank(trial, p_) > rank) {
                    rows.push_back(mat_to_vec(cand.reduced(p_)));
                    complement_.push_back(cand.reduced(p_));
                    ++rank;
                }
                if (rank == da) break;
            }
            if ((int)complement_.size() != d_)
                throw std::logic_error("SymplecticSpace: basis extension failed");
        }
    }

    // pairing table on the quotient coordinates
    gram_.assign((size_t)d_, std::vector<i64>((size_t)d_, 0));
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            gram_[(size_t)i][(size_t)j] =
                mod_reduce(complement_[(size_t)i].bracket(complement_[(size_t)j]).trace_form(beta_), p_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            if (mod_reduce(gram_[(size_t)i][(size_t)j] + gram_[(size_t)j][(size_t)i], p_) != 0)
                throw std::logic_error("SymplecticSpace: pairing is not antisymmetric");
    if (det_mod_p(gram_, p_) == 0)
        throw DegenerateFormError("SymplecticSpace: pairing is degenerate on the quotient");
    if (d_ % 2 != 0) throw DegenerateFormError("SymplecticSpace: odd-dimensional quotient");

    // symplectic basis by deterministic Gram-Schmidt over the coordinate order
    std::vector<std::vector<i64>> pool;
    for (int i = 0; i < d_; ++i) {
        std::vector<i64> e((size_t)d_, 0);
        e[(size_t)i] = 1;
        pool.push_back(e);
    }
    std::vector<std::vector<i64>> epart, fpart;
    auto pair_of = [&](const std::vector<i64>& u, const std::vector<i64>& v) {
        i64 acc = 0;
        for (int i = 0; i < d_; ++i) {
            if (u[(size_t)i] == 0) continue;
            for (int j = 0; j < d_; ++j)
                acc = mod_reduce(acc + u[(size_t)i] * gram_[(size_t)i][(size_t)j] % p_ * v[(size_t)j], p_);
        }
        return acc;
    };
    while (!pool.empty()) {
        std::vector<i64> u = pool.front();
        pool.erase(pool.begin());
        size_t wpos = pool.size();
        for (size_t t = 0; t < pool.size(); ++t)
            if (pair_of(u, pool[t]) != 0) { wpos = t; break; }
        if (wpos == pool.size())
            throw std::logic_error("SymplecticSpace: no symplectic partner found");
        std::vector<i64> w = pool[wpos];
        pool.erase(pool.begin() + (long)wpos);
        i64 scale = mod_inv(pair_of(u, w), p_);
        for (auto& x : w) x = mod_reduce(x * scale, p_);
        // reduce the remaining pool modulo the hyperbolic plane (u, w)
        for (auto& v : pool) {
            i64 cf = pair_of(v, w);
            i64 ce = pair_of(v, u);
            for (int i = 0; i < d_; ++i)
                v[(size_t)i] = mod_reduce(v[(size_t)i] - cf * u[(size_t)i] + ce * w[(size_t)i], p_);
        }
        // drop vectors that became zero
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [](const std::vector<i64>& v) {
                                      return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
                                  }),
                   pool.end());
        epart.push_back(u);
        fpart.push_back(w);
    }
    if ((int)(epart.size() + fpart.size()) != d_)
        throw std::logic_error("SymplecticSpace: polarization size mismatch");
    symp_rows_ = epart;
    for (auto& f : fpart) symp_rows_.push_back(f);
    // verify the standard relations
    int m = d_ / 2;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (pair_of(symp_rows_[(size_t)i], symp_rows_[(size_t)j]) != 0)
                throw std::logic_error("SymplecticSpace: W' is not isotropic");
            if (pair_of(symp_rows_[(size_t)(m + i)], symp_rows_[(size_t)(m + j)]) != 0)
                throw std::logic_error("SymplecticSpace: W is not isotropic");
            if (pair_of(symp_rows_[(size_t)i], symp_rows_[(size_t)(m + j)]) != (i == j ? 1 : 0))
                throw std::logic_error("SymplecticSpace: pairing of W' and W is not unimodular");
        }
    // inverse of the transposed basis matrix for coordinate changes
    Mat bt(d_, p_);
    if (d_ > kMaxN) throw std::logic_error("SymplecticSpace: quotient too large for Mat helpers");
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) bt.at(i, j) = symp_rows_[(size_t)j][(size_t)i];
    Mat bti = bt.inverse();
    symp_inv_.assign((size_t)d_, std::vector<i64>((size_t)d_, 0));
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) symp_inv_[(size_t)i][(size_t)j] = bti.at(i, j);
}

std::pair<std::vector<i64>, Mat> SymplecticSpace::decompose(const Mat& X) const {
    int n = beta_.n;
    int k = (int)central_.size();
    std::vector<std::vector<i64>> A((size_t)(n * n), std::vector<i64>((size_t)(d_ + k), 0));
    std::vector<i64> rhs((size_t)(n * n), 0);
    for (int e = 0; e < n * n; ++e) {
        for (int t = 0; t < d_; ++t) A[(size_t)e][(size_t)t] = complement_[(size_t)t].a[(size_t)e];
        for (int t = 0; t < k; ++t) A[(size_t)e][(size_t)(d_ + t)] = central_[(size_t)t].a[(size_t)e];
        rhs[(size_t)e] = mod_reduce(X.a[(size_t)e], p_);
    }
    auto sol = solve_modular(A, rhs, p_, 1);
    if (!sol) throw std::invalid_argument("SymplecticSpace::decompose: X is not in the ambient algebra");
    std::vector<i64> v(sol->particular.begin(), sol->particular.begin() + d_);
    Mat Y(n, p_);
    for (int t = 0; t < k; ++t)
        if (sol->particular[(size_t)(d_ + t)] != 0)
            Y = Y + central_[(size_t)t].scaled(sol->particular[(size_t)(d_ + t)]);
    return {std::move(v), Y};
}

Mat SymplecticSpace::apply_section(const std::vector<Mat>& section, const std::vector<i64>& v) const {
    Mat X(beta_.n, p_);
    for (int i = 0; i < d_; ++i)
        if (v[(size_t)i] != 0) X = X + section[(size_t)i].scaled(v[(size_t)i]);
    return X;
}

i64 SymplecticSpace::pairing(const std::vector<i64>& u, const std::vector<i64>& v) const {
    i64 acc = 0;
    for (int i = 0; i < d_; ++i) {
        if (u[(size_t)i] == 0) continue;
        for (int j = 0; j < d_; ++j)
            acc = mod_reduce(acc + u[(size_t)i] * gram_[(size_t)i][(size_t)j] % p_ * v[(size_t)j], p_);
    }
    return acc;
}

std::pair<std::vector<i64>, std::vector<i64>> SymplecticSpace::polarize(const std::vector<i64>& v) const {
    int m = d_ / 2;
    std::vector<i64> c((size_t)d_, 0);
    for (int i = 0; i < d_; ++i) {
        i64 acc = 0;
        for (int j = 0; j < d_; ++j) acc = mod_reduce(acc + symp_inv_[(size_t)i][(size_t)j] * v[(size_t)j], p_);
        c[(size_t)i] = acc;
    }
    return {std::vector<i64>(c.begin(), c.begin() + m), std::vector<i64>(c.begin() + m, c.end())};
}

std::vector<Mat> SymplecticSpace::random_section(u64 seed) const {
    std::mt19937_64 rng(seed);
    std::vector<Mat> s = complement_;
    for (auto& m : s)
        for (const Mat& z : central_) m = m + z.scaled((i64)(rng() % (u64)p_));
    return s;
}

// ---------------------------------------------------------------------------
// Schur cocycle
// ---------------------------------------------------------------------------

namespace {

std::vector<i64> central_coords(const SymplecticSpace& V, const Mat& Y) {
    const auto& Z = V.central_basis();
    int n = Y.n;
    std::vector<std::vector<i64>> A((size_t)(n * n), std::vector<i64>(Z.size(), 0));
    std::vector<i64> rhs((size_t)(n * n), 0);
    for (int e = 0; e < n * n; ++e) {
        for (size_t t = 0; t < Z.size(); ++t) A[(size_t)e][t] = Z[t].a[(size_t)e];
        rhs[(size_t)e] = Y.a[(size_t)e];
    }
    auto sol = solve_modular(A, rhs, V.p(), 1);
    if (!sol) throw GammaEscapesError("central_coords: element is not in g_beta");
    return sol->particular;
}

std::vector<i64> solve_vg(const SymplecticSpace& V, const std::vector<i64>& L) {
    // find v_g with <e_j, v_g> = L_j for all j
    int d = V.dim();
    std::vector<std::vector<i64>> A((size_t)d, std::vector<i64>((size_t)d, 0));
    for (int j = 0; j < d; ++j) {
        std::vector<i64> ej((size_t)d, 0);
        ej[(size_t)j] = 1;
        for (int t = 0; t < d; ++t) {
            std::vector<i64> et((size_t)d, 0);
            et[(size_t)t] = 1;
            A[(size_t)j][(size_t)t] = V.pairing(ej, et);
        }
    }
    auto sol = solve_modular(A, L, V.p(), 1);
    if (!sol) throw std::logic_error("solve_vg: pairing solve failed despite nondegeneracy");
    return sol->particular;
}

}  // namespace

SchurCocycle schur_cocycle(const SymplecticSpace& V, const MatGroup& group,
                           const std::vector<i64>& rho_exponents,
                           const std::vector<Mat>* section_ptr) {
    const std::vector<Mat>& section = section_ptr ? *section_ptr : V.default_section();
    i64 p = V.p();
    int d = V.dim();
    if (rho_exponents.size() != V.central_basis().size())
        throw std::invalid_argument("schur_cocycle: rho exponent arity mismatch");
    // section validity: class of section[j] is e_j
    for (int j = 0; j < d; ++j) {
        auto [v, y] = V.decompose(section[(size_t)j]);
        for (int i = 0; i < d; ++i)
            if (v[(size_t)i] != (i == j ? 1 : 0))
                throw std::invalid_argument("schur_cocycle: not a section of the quotient");
        (void)y;
    }
    // the acting group must fix g_beta pointwise
    for (const Mat& g : group.elems) {
        Mat gp = g.reduced(p);
        Mat gi = gp.inverse();
        for (const Mat& z : V.central_basis())
            if (!(gp * z * gi == z))
                throw std::invalid_argument("schur_cocycle: group does not fix g_beta pointwise");
    }

    auto rho_exp = [&](const std::vector<i64>& ycoords) {
        i64 e = 0;
        for (size_t i = 0; i < ycoords.size(); ++i)
            e = mod_reduce(e + rho_exponents[i] * ycoords[i], p);
        return e;
    };

    SchurCocycle out;
    out.group = group;
    int ng = (int)group.elems.size();
    out.v_g.resize((size_t)ng);
    std::vector<std::vector<std::vector<i64>>> sigma((size_t)ng);

    for (int gi = 0; gi < ng; ++gi) {
        Mat g = group.elems[(size_t)gi].reduced(p);
        Mat ginv = g.inverse();
        std::vector<i64> L((size_t)d, 0);
        sigma[(size_t)gi].resize((size_t)d);
        for (int j = 0; j < d; ++j) {
            Mat adj = ginv * section[(size_t)j] * g;  // Ad(g)^{-1} on the section image
            auto [vj, yj] = V.decompose(adj);
            sigma[(size_t)gi][(size_t)j] = vj;
            Mat gamma = adj - V.apply_section(section, vj);
            auto [gv, gy] = V.decompose(gamma);
            for (int i = 0; i < d; ++i)
                if (gv[(size_t)i] != 0) throw GammaEscapesError("schur_cocycle: gamma escapes g_beta");
            (void)yj;
            L[(size_t)j] = rho_exp(central_coords(V, gamma));
        }
        out.v_g[(size_t)gi] = solve_vg(V, L);
        // defining identity re-checked on the basis and a few combinations
        for (int j = 0; j < d; ++j) {
            std::vector<i64> ej((size_t)d, 0);
            ej[(size_t)j] = 1;
            if (V.pairing(ej, out.v_g[(size_t)gi]) != L[(size_t)j])
                throw NonlinearRhoError("schur_cocycle: rho composed with gamma is not the pairing form");
        }
    }

    i64 inv2 = mod_inv(2, p);
    out.cocycle.n = ng;
    out.cocycle.table.assign((size_t)(ng * ng), CycScalar::one());
    for (int gi = 0; gi < ng; ++gi)
        for (int hi = 0; hi < ng; ++hi) {
            int ghi = group.mul(gi, hi);
            i64 e = mod_reduce(inv2 * V.pairing(out.v_g[(size_t)gi], out.v_g[(size_t)ghi]), p);
            out.cocycle.at(gi, hi) = CycScalar::root(p, e);
        }
    return out;
}

bool section_independence_check(const SymplecticSpace& V, const MatGroup& group,
                                const std::vector<i64>& rho_exponents,
                                const std::vector<std::vector<Mat>>& sections) {
    if (sections.size() < 2)
        throw std::invalid_argument("section_independence_check: need at least two sections");
    std::vector<SchurCocycle> cs;
    for (const auto& s : sections) cs.push_back(schur_cocycle(V, group, rho_exponents, &s));
    GroupTable tab = group.table();
    AbelianBasis basis(tab);
    i64 p = V.p();
    i64 inv2 = mod_inv(2, p);
    int d = V.dim();

    for (size_t a = 0; a < cs.size(); ++a)
        for (size_t b = a + 1; b < cs.size(); ++b) {
            Cocycle2 ratio = cs[b].cocycle.ratio(cs[a].cocycle);
            auto cert = trivialize(ratio, tab, basis);
            if (!cert.ok) return false;

            // closed-form comparison cochain from the section difference:
            // delta solves rho([v] - [v]') = tau(<v, delta>) on the basis
            std::vector<i64> L((size_t)d, 0);
            for (int j = 0; j < d; ++j) {
                Mat diff = sections[a][(size_t)j] - sections[b][(size_t)j];
                auto yc = central_coords(V, diff);
                i64 e = 0;
                for (size_t i = 0; i < yc.size(); ++i)
                    e = mod_reduce(e + rho_exponents[i] * yc[i], p);
                L[(size_t)j] = e;
            }
            std::vector<i64> delta = solve_vg(V, L);
            int ng = (int)group.elems.size();
            std::vector<CycScalar> alpha((size_t)ng);
            for (int gi = 0; gi < ng; ++gi) {
                // comparison cochain tau((1/2) <v_{g^{-1}} - v'_g, delta>);
                // expanding the shift v'_g = v_g - delta + delta sigma_{g^{-1}}
                // shows its coboundary is exactly the ratio of the two
                // cocycle tables
                Mat gmat = group.elems[(size_t)gi];
                int gin = group.index_of(gmat.inverse());
                std::vector<i64> w((size_t)d, 0);
                for (int i = 0; i < d; ++i)
                    w[(size_t)i] = mod_reduce(cs[a].v_g[(size_t)gin][(size_t)i] -
                                                  cs[b].v_g[(size_t)gi][(size_t)i],
                                              p);
                alpha[(size_t)gi] = CycScalar::root(p, mod_reduce(inv2 * V.pairing(w, delta), p));
            }
            // the ratio must equal the coboundary alpha(g) alpha(h) alpha(gh)^{-1}
            if (!verify_coboundary(ratio, alpha, tab)) return false;
            // the solved vectors of the two sections differ by the
            // delta-shift delta sigma_{g^{-1}} - delta
            for (int gi = 0; gi < ng; ++gi) {
                Mat g = group.elems[(size_t)gi].reduced(p);
                Mat img = g * V.apply_section(sections[a], delta) * g.inverse();
                auto [dshift, y] = V.decompose(img);
                (void)y;
                for (int i = 0; i < d; ++i) {
                    i64 expect = mod_reduce(cs[a].v_g[(size_t)gi][(size_t)i] - delta[(size_t)i] +
                                                dshift[(size_t)i],
                                            p);
                    if (cs[b].v_g[(size_t)gi][(size_t)i] != expect) return false;
                }
            }
        }
    return true;
}

bool restriction_compare(const GroupSpec& spec, i64 p, const Mat& beta_bar,
                         const std::vector<i64>& rho_exponents) {
    int n = spec.n;
    LieLattice glie(spec, p, 1);
    std::vector<Mat> gbasis;
    for (const Mat& b : glie.basis(1)) gbasis.push_back(b.reduced(p));
    SymplecticSpace Vg(p, gbasis, beta_bar);

    // ambient gl_n data
    std::vector<Mat> hbasis;
    for (int e = 0; e < n * n; ++e) {
        Mat b(n, p);
        b.a[(size_t)e] = 1;
        hbasis.push_back(b);
    }
    // orthogonal complement of g inside gl_n for the trace form
    std::vector<std::vector<i64>> A(gbasis.size(), std::vector<i64>((size_t)(n * n), 0));
    for (size_t i = 0; i < gbasis.size(); ++i)
        for (int e = 0; e < n * n; ++e) {
            Mat b(n, p);
            b.a[(size_t)e] = 1;
            A[i][(size_t)e] = mod_reduce(gbasis[i].trace_form(b), p);
        }
    auto ker = kernel_modular(A, p, 1);
    std::vector<Mat> gperp;
    for (size_t t = 0; t < ker.kernel.size(); ++t) {
        if (ker.kernel_orders[t] != p) continue;
        Mat W(n, p);
        for (int e = 0; e < n * n; ++e) W.a[(size_t)e] = ker.kernel[t][(size_t)e];
        if (!W.is_zero()) gperp.push_back(W);
    }
    if (gbasis.size() + gperp.size() != (size_t)(n * n))
        throw std::logic_error("restriction_compare: gl does not split against g");

    // centralizer parts: (g^perp)_beta and its complement inside g^perp
    Mat bp = beta_bar.reduced(p);
    std::vector<Mat> perp_beta, perp_compl;
    {
        std::vector<std::vector<i64>> rows;
        for (const Mat& w : gperp) {
            std::vector<i64> r;
            Mat br = w.bracket(bp);
            for (int e = 0; e < n * n; ++e) r.push_back(br.a[(size_t)e]);
            rows.push_back(std::move(r));
        }
        // kernel over the coefficients of gperp
        std::vector<std::vector<i64>> At((size_t)(n * n), std::vector<i64>(gperp.size(), 0));
        for (size_t t = 0; t < gperp.size(); ++t)
            for (int e = 0; e < n * n; ++e) At[(size_t)e][t] = rows[t][(size_t)e];
        auto kb = kernel_modular(At, p, 1);
        std::vector<std::vector<i64>> indep;
        for (size_t t = 0; t < kb.kernel.size(); ++t) {
            if (kb.kernel_orders[t] != p) continue;
            Mat W(n, p);
            for (size_t j = 0; j < gperp.size(); ++j)
                if (kb.kernel[t][j] != 0) W = W + gperp[j].scaled(kb.kernel[t][j]);
            if (!W.is_zero()) perp_beta.push_back(W);
        }
        // extend perp_beta to all of gperp; the added vectors are the complement
        std::vector<std::vector<i64>> have;
        for (const Mat& z : perp_beta) have.push_back(mat_to_vec(z));
        int rank = (int)perp_beta.size();
        for (const Mat& cand : gperp) {
            auto trial = have;
            trial.push_back(mat_to_vec(cand));
            if (fp_rank(trial, p) > rank) {
                have.push_back(mat_to_vec(cand));
                perp_compl.push_back(cand);
                ++rank;
            }
        }
    }

    // product section: the g-side default complement followed by the
    // perpendicular complement
    std::vector<Mat> tilde_compl = Vg.default_section();
    for (const Mat& w : perp_compl) tilde_compl.push_back(w);
    SymplecticSpace Vh(p, hbasis, beta_bar, tilde_compl);

    if (Vh.central_basis().size() != Vg.central_basis().size() + perp_beta.size())
        throw std::logic_error("restriction_compare: centralizer does not split");

    // pulled-back character: rho on the g_beta part, trivial on the rest
    std::vector<i64> rho_h(Vh.central_basis().size(), 0);
    {
        // write each h-side central basis element as g_beta part + perp part
        std::vector<Mat> split_basis = Vg.central_basis();
        for (const Mat& z : perp_beta) split_basis.push_back(z);
        for (size_t i = 0; i < Vh.central_basis().size(); ++i) {
            std::vector<std::vector<i64>> M((size_t)(n * n), std::vector<i64>(split_basis.size(), 0));
            std::vector<i64> rhs((size_t)(n * n), 0);
            for (int e = 0; e < n * n; ++e) {
                for (size_t t = 0; t < split_basis.size(); ++t) M[(size_t)e][t] = split_basis[t].a[(size_t)e];
                rhs[(size_t)e] = Vh.central_basis()[i].a[(size_t)e];
            }
            auto sol = solve_modular(M, rhs, p, 1);
            if (!sol) throw std::logic_error("restriction_compare: central splitting failed");
            i64 e = 0;
            for (size_t j = 0; j < Vg.central_basis().size(); ++j)
                e = mod_reduce(e + rho_exponents[j] * sol->particular[j], p);
            rho_h[i] = e;
        }
    }

    MatGroup group = centralizer_unit_group(spec, p, 1, beta_bar.reduced(p));
    SchurCocycle cg = schur_cocycle(Vg, group, rho_exponents);
    SchurCocycle ch = schur_cocycle(Vh, group, rho_h);
    for (size_t i = 0; i < cg.cocycle.table.size(); ++i)
        if (!(cg.cocycle.table[i] == ch.cocycle.table[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Monomial matrices, Schrodinger model
// ---------------------------------------------------------------------------

MonomialMat MonomialMat::identity(int dim) {
    MonomialMat m;
    m.dim = dim;
    m.row_of.resize((size_t)dim);
    m.scal.assign((size_t)dim, CycScalar::one());
    for (int i = 0; i < dim; ++i) m.row_of[(size_t)i] = i;
    return m;
}

MonomialMat MonomialMat::operator*(const MonomialMat& o) const {
    MonomialMat m;
    m.dim = dim;
    m.row_of.resize((size_t)dim);
    m.scal.resize((size_t)dim);
    for (int j = 0; j < dim; ++j) {
        int mid = o.row_of[(size_t)j];
        m.row_of[(size_t)j] = row_of[(size_t)mid];
        m.scal[(size_t)j] = o.scal[(size_t)j] * scal[(size_t)mid];
    }
    return m;
}

MonomialMat MonomialMat::inverse() const {
    MonomialMat m;
    m.dim = dim;
    m.row_of.resize((size_t)dim);
    m.scal.resize((size_t)dim);
    for (int j = 0; j < dim; ++j) {
        m.row_of[(size_t)row_of[(size_t)j]] = j;
        m.scal[(size_t)row_of[(size_t)j]] = scal[(size_t)j].inv();
    }
    return m;
}

bool MonomialMat::operator==(const MonomialMat& o) const {
    if (dim != o.dim || row_of != o.row_of) return false;
    for (int j = 0; j < dim; ++j)
        if (!(scal[(size_t)j] == o.scal[(size_t)j])) return false;
    return true;
}

MonomialMat MonomialMat::scaled(const CycScalar& s) const {
    MonomialMat m = *this;
    for (auto& x : m.scal) x = x * s;
    return m;
}

cplx MonomialMat::trace() const {
    cplx t = 0.0;
    for (int j = 0; j < dim; ++j)
        if (row_of[(size_t)j] == j) t += scal[(size_t)j].to_complex();
    return t;
}

CMat MonomialMat::dense() const {
    CMat m((size_t)(dim * dim), cplx(0, 0));
    for (int j = 0; j < dim; ++j) m[(size_t)(row_of[(size_t)j] * dim + j)] = scal[(size_t)j].to_complex();
    return m;
}

bool MonomialMat::is_scalar(CycScalar* value) const {
    for (int j = 0; j < dim; ++j)
        if (row_of[(size_t)j] != j || !(scal[(size_t)j] == scal[0])) return false;
    if (value) *value = scal[0];
    return true;
}

SchrodingerModel::SchrodingerModel(const SymplecticSpace& V) : V_(&V) {
    int m = V.half();
    dim_ = (int)ipow(V.p(), m);
    points_.resize((size_t)dim_);
    for (int idx = 0; idx < dim_; ++idx) {
        std::vector<i64> w((size_t)m);
        int t = idx;
        for (int i = 0; i < m; ++i) { w[(size_t)i] = t % (int)V.p(); t /= (int)V.p(); }
        points_[(size_t)idx] = std::move(w);
    }
}

MonomialMat SchrodingerModel::pi(const std::vector<i64>& v, const CycScalar& s) const {
    i64 p = V_->p();
    int m = V_->half();
    auto [vm, vp] = V_->polarize(v);  // v = v_- + v_+ with v_- in W', v_+ in W
    i64 inv2 = mod_inv(2, p);
    // <v_-, v_+> = sum a_i b_i in the symplectic coordinates
    i64 base = 0;
    for (int i = 0; i < m; ++i) base = mod_reduce(base + vm[(size_t)i] * vp[(size_t)i], p);
    base = mod_reduce(base * inv2, p);

    MonomialMat out;
    out.dim = dim_;
    out.row_of.resize((size_t)dim_);
    out.scal.resize((size_t)dim_);
    for (int u = 0; u < dim_; ++u) {
        const auto& uw = points_[(size_t)u];
        // target w = u - v_-; scalar tau(base + <u - v_-, v_+>)
        std::vector<i64> tw((size_t)m);
        i64 cross = 0;
        int tidx = 0, mul = 1;
        for (int i = 0; i < m; ++i) {
            tw[(size_t)i] = mod_reduce(uw[(size_t)i] - vm[(size_t)i], p);
            cross = mod_reduce(cross + tw[(size_t)i] * vp[(size_t)i], p);
            tidx += (int)tw[(size_t)i] * mul;
            mul *= (int)p;
        }
        out.row_of[(size_t)u] = tidx;
        out.scal[(size_t)u] = s * CycScalar::root(p, base + cross);
    }
    return out;
}

// ---------------------------------------------------------------------------
// kernel representation at odd precision
// ---------------------------------------------------------------------------

const MonomialMat& KernelRepresentation::at(u32 view_index) const {
    auto it = std::lower_bound(kernel.begin(), kernel.end(), view_index);
    if (it == kernel.end() || *it != view_index)
        throw std::out_of_range("KernelRepresentation::at: element outside the kernel");
    return value[(size_t)(it - kernel.begin())];
}

KernelRepresentation pi_beta_rho(const FiniteGroupView& view, const Mat& beta,
                                 const std::vector<i64>& rho_exponents,
                                 const SymplecticSpace& V, i64 pair_budget) {
    int r = view.r();
    if (r < 3 || r % 2 == 0) throw std::invalid_argument("pi_beta_rho: need odd r >= 3");
    int l = (r + 1) / 2;
    i64 p = view.p();
    i64 plm1 = ipow(p, l - 1);
    i64 pl = ipow(p, l);
    i64 mod = view.mod();
    int n = view.spec().n;
    if (rho_exponents.size() != V.central_basis().size())
        throw std::invalid_argument("pi_beta_rho: rho arity mismatch");

    SchrodingerModel model(V);
    KernelRepresentation rep;
    rep.view = &view;
    rep.beta = beta;
    rep.rho = rho_exponents;
    rep.dim = model.dim();
    rep.kernel = view.kernel_indices(l - 1);
    std::sort(rep.kernel.begin(), rep.kernel.end());

    i64 inv2p = mod_inv(2, p);
    for (u32 ki : rep.kernel) {
        Mat k = view.mat(ki);
        Mat T(n, mod);
        for (int e = 0; e < n * n; ++e) {
            i64 d = mod_reduce(k.a[(size_t)e] - (e % (n + 1) == 0 ? 1 : 0), mod);
            T.a[(size_t)e] = d / plm1;
        }
        // scalar tau(p^{-l} B(T, beta) - (2p)^{-1} B(T^2, beta))
        i64 eb = mod_reduce(T.trace_form(beta), pl);
        i64 eb2 = mod_reduce(mod_reduce((T * T).trace_form(beta), p) * inv2p, p);
        CycScalar scal = CycScalar::root(pl, eb - plm1 * eb2);
        auto [v, Y] = V.decompose(T.reduced(p));
        i64 re = 0;
        auto yc = central_coords(V, Y);
        for (size_t i = 0; i < yc.size(); ++i) re = mod_reduce(re + rho_exponents[i] * yc[i], p);
        rep.value.push_back(model.pi(v, scal * CycScalar::root(p, re)));
    }

    // certified multiplicativity
    size_t K = rep.kernel.size();
    if ((u128)K * (u128)K <= (u128)pair_budget) {
        for (size_t a = 0; a < K; ++a)
            for (size_t b = 0; b < K; ++b) {
                u32 prod = view.mul(rep.kernel[a], rep.kernel[b]);
                if (!(rep.value[a] * rep.value[b] == rep.at(prod)))
                    throw NotMultiplicativeError("pi_beta_rho: representation is not multiplicative");
            }
    } else {
        std::mt19937_64 rng(17);
        for (int t = 0; t < 4096; ++t) {
            size_t a = (size_t)(rng() % K), b = (size_t)(rng() % K);
            u32 prod = view.mul(rep.kernel[a], rep.kernel[b]);
            if (!(rep.value[a] * rep.value[b] == rep.at(prod)))
                throw NotMultiplicativeError("pi_beta_rho: representation is not multiplicative (sampled)");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// intertwiners
// ---------------------------------------------------------------------------

IntertwinerFamily intertwiner_family(const FiniteGroupView& view,
                                     const KernelRepresentation& pi, const MatGroup& gbeta,
                                     u64 seed, int retry_budget) {
    int dim = pi.dim;
    IntertwinerFamily fam;
    fam.gbeta = gbeta;
    int ng = (int)gbeta.elems.size();
    fam.U.resize((size_t)ng);

    // dense tables of pi and its inverses
    std::vector<CMat> dense, dense_inv;
    dense.reserve(pi.kernel.size());
    for (const auto& m : pi.value) {
        dense.push_back(m.dense());
        dense_inv.push_back(m.inverse().dense());
    }
    std::unordered_map<u32, size_t> kpos;
    for (size_t i = 0; i < pi.kernel.size(); ++i) kpos[pi.kernel[i]] = i;

    std::mt19937_64 rng(seed);
    for (int gi = 0; gi < ng; ++gi) {
        if (gi == gbeta.id) {
            fam.U[(size_t)gi] = cmat_identity(dim);
            continue;
        }
        u32 gview = view.index_of(gbeta.elems[(size_t)gi]);
        u32 gview_inv = view.inv(gview);
        // conjugation permutation of the kernel
        std::vector<size_t> conj_pos(pi.kernel.size());
        for (size_t t = 0; t < pi.kernel.size(); ++t) {
            u32 c = view.mul(view.mul(gview_inv, pi.kernel[t]), gview);
            auto it = kpos.find(c);
            if (it == kpos.end())
                throw std::logic_error("intertwiner_family: conjugation leaves the kernel");
            conj_pos[t] = it->second;
        }
        bool found = false;
        for (int attempt = 0; attempt < retry_budget && !found; ++attempt) {
            CMat A((size_t)(dim * dim));
            for (auto& v : A)
                v = cplx((double)(rng() % 2048) / 1024.0 - 1.0, (double)(rng() % 2048) / 1024.0 - 1.0);
            CMat U((size_t)(dim * dim), cplx(0, 0));
            for (size_t t = 0; t < pi.kernel.size(); ++t) {
                CMat term = cmat_mul(dense[t], cmat_mul(A, dense_inv[conj_pos[t]], dim), dim);
                for (size_t e = 0; e < U.size(); ++e) U[e] += term[e];
            }
            cplx det = cmat_det(U, dim);
            if (std::abs(det) < 1e-6 * std::pow((double)pi.kernel.size(), dim)) continue;
            // normalise to det = 1 so the cocycle lands on dim-th roots of unity
            cplx scale = std::polar(std::pow(std::abs(det), 1.0 / dim), std::arg(det) / dim);
            U = cmat_scale(U, 1.0 / scale);
            fam.U[(size_t)gi] = U;
            found = true;
        }
        if (!found)
            throw IntertwinerNotFoundError("intertwiner_family: no invertible average found");
    }

    // intertwining residuals over the whole kernel
    double resid = 0;
    for (int gi = 0; gi < ng; ++gi) {
        u32 gview = view.index_of(gbeta.elems[(size_t)gi]);
        u32 gview_inv = view.inv(gview);
        for (size_t t = 0; t < pi.kernel.size(); ++t) {
            u32 c = view.mul(view.mul(gview_inv, pi.kernel[t]), gview);
            CMat lhs = cmat_mul(fam.U[(size_t)gi], dense[kpos[c]], pi.dim);
            CMat rhs = cmat_mul(dense[t], fam.U[(size_t)gi], pi.dim);
            resid = std::max(resid, cmat_dist(lhs, rhs, pi.dim));
        }
    }
    fam.max_intertwining_residual = resid;
    if (resid > 1e-9)
        throw IntertwinerNotFoundError("intertwiner_family: intertwining identity residual too large");

    // cocycle: U(g) U(h) = c_U(g, h) U(gh), values exactly dim-th roots
    fam.c_u.n = ng;
    fam.c_u.table.assign((size_t)(ng * ng), CycScalar::one());
    std::vector<CMat> Uinv((size_t)ng);
    for (int gi = 0; gi < ng; ++gi) Uinv[(size_t)gi] = cmat_inv(fam.U[(size_t)gi], dim);
    for (int gi = 0; gi < ng; ++gi)
        for (int hi = 0; hi < ng; ++hi) {
            int ghi = gbeta.mul(gi, hi);
            CMat prod = cmat_mul(cmat_mul(fam.U[(size_t)gi], fam.U[(size_t)hi], dim), Uinv[(size_t)ghi], dim);
            cplx c = cmat_trace(prod, dim) / (double)dim;
            fam.c_u.at(gi, hi) = round_to_root(c, dim, 1e-6);
            // the scalar must hold matrixwise, not just on the trace
            if (cmat_dist(prod, cmat_scale(cmat_identity(dim), c), dim) > 1e-8)
                throw std::logic_error("intertwiner_family: U(g)U(h)U(gh)^{-1} is not scalar");
        }
    return fam;
}

HomomorphicIntertwiners make_homomorphic(const FiniteGroupView& view,
                                         const KernelRepresentation& pi,
                                         const IntertwinerFamily& fam) {
    int dim = pi.dim;
    const MatGroup& gb = fam.gbeta;
    GroupTable tab = gb.table();
    AbelianBasis basis(tab);
    auto cert = trivialize(fam.c_u, tab, basis);
    if (!cert.ok)
        throw std::logic_error("make_homomorphic: intertwiner cocycle is not a coboundary");

    int ng = (int)gb.elems.size();
    std::vector<CMat> Uprime((size_t)ng);
    for (int gi = 0; gi < ng; ++gi)
        Uprime[(size_t)gi] = cmat_scale(fam.U[(size_t)gi], 1.0 / cert.alpha[(size_t)gi].to_complex());

    // on the intersection with the kernel, U' is a homothety; extend that
    // character of the intersection to all of G_beta and divide it out
    int l = (view.r() + 1) / 2;
    i64 plm1 = ipow(view.p(), l - 1);
    std::vector<int> inter;
    std::vector<CycScalar> tvals;
    for (int gi = 0; gi < ng; ++gi) {
        if (!(gb.elems[(size_t)gi].reduced(plm1) == Mat::identity(gb.n, plm1))) continue;
        cplx t = cmat_trace(Uprime[(size_t)gi], dim) / (double)dim;
        if (cmat_dist(Uprime[(size_t)gi], cmat_scale(cmat_identity(dim), t), dim) > 1e-8)
            throw std::logic_error("make_homomorphic: U' is not a homothety on the intersection");
        inter.push_back(gi);
        tvals.push_back(CycScalar::from_complex(t));
    }
    AbelianCharacter theta0 = extend_character(tab, inter, tvals);

    HomomorphicIntertwiners out;
    out.U.resize((size_t)ng);
    for (int gi = 0; gi < ng; ++gi)
        out.U[(size_t)gi] = cmat_scale(Uprime[(size_t)gi], 1.0 / theta0.values[(size_t)gi].to_complex());

    for (int gi = 0; gi < ng; ++gi)
        for (int hi = 0; hi < ng; ++hi) {
            int ghi = gb.mul(gi, hi);
            out.hom_residual = std::max(
                out.hom_residual,
                cmat_dist(cmat_mul(out.U[(size_t)gi], out.U[(size_t)hi], dim), out.U[(size_t)ghi], dim));
        }
    for (int gi : inter)
        out.unit_residual =
            std::max(out.unit_residual, cmat_dist(out.U[(size_t)gi], cmat_identity(dim), dim));
    return out;
}

}  // namespace ringrep
