#include "ringrep/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace ringrep {

Mat Mat::identity(int n, i64 mod) {
    Mat m(n, mod);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % mod;
    return m;
}

Mat Mat::from_rows(i64 mod, const std::vector<std::vector<i64>>& rows) {
    int n = (int)rows.size();
    if (n == 0 || n > kMaxN) throw std::invalid_argument("Mat::from_rows: bad size");
    Mat m(n, mod);
    for (int i = 0; i < n; ++i) {
        if ((int)rows[i].size() != n) throw std::invalid_argument("Mat::from_rows: ragged rows");
        for (int j = 0; j < n; ++j) m.at(i, j) = mod_reduce(rows[i][j], mod);
    }
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    Mat m(n, mod);
    for (int i = 0; i < n * n; ++i) m.a[(size_t)i] = mod_reduce(a[(size_t)i] + o.a[(size_t)i], mod);
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    Mat m(n, mod);
    for (int i = 0; i < n * n; ++i) m.a[(size_t)i] = mod_reduce(a[(size_t)i] - o.a[(size_t)i], mod);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    Mat m(n, mod);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            i64 v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < n; ++j)
                m.at(i, j) = mod_reduce(m.at(i, j) + v * o.at(k, j), mod);
        }
    return m;
}

Mat Mat::operator-() const {
    Mat m(n, mod);
    for (int i = 0; i < n * n; ++i) m.a[(size_t)i] = mod_reduce(-a[(size_t)i], mod);
    return m;
}

bool Mat::operator==(const Mat& o) const {
    if (n != o.n || mod != o.mod) return false;
    for (int i = 0; i < n * n; ++i)
        if (a[(size_t)i] != o.a[(size_t)i]) return false;
    return true;
}

Mat Mat::scaled(i64 c) const {
    Mat m(n, mod);
    c = mod_reduce(c, mod);
    for (int i = 0; i < n * n; ++i) m.a[(size_t)i] = mod_reduce(a[(size_t)i] * c, mod);
    return m;
}

Mat Mat::transposed() const {
    Mat m(n, mod);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(j, i) = at(i, j);
    return m;
}

Mat Mat::reduced(i64 new_mod) const {
    if (mod % new_mod != 0) throw std::invalid_argument("Mat::reduced: modulus is not a divisor");
    Mat m(n, new_mod);
    for (int i = 0; i < n * n; ++i) m.a[(size_t)i] = mod_reduce(a[(size_t)i], new_mod);
    return m;
}

Mat Mat::pow(i64 e) const {
    Mat acc = identity(n, mod), base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

i64 Mat::trace() const {
    i64 t = 0;
    for (int i = 0; i < n; ++i) t = mod_reduce(t + at(i, i), mod);
    return t;
}

namespace {

i64 det_rec(const Mat& m, std::vector<int>& cols, int row) {
    if (row == m.n) return 1 % m.mod;
    i64 acc = 0;
    int sign = 1;
    for (size_t k = 0; k < cols.size(); ++k) {
        int c = cols[k];
        i64 v = m.at(row, c);
        if (v != 0) {
            cols.erase(cols.begin() + (long)k);
            i64 sub = det_rec(m, cols, row + 1);
            cols.insert(cols.begin() + (long)k, c);
            acc = mod_reduce(acc + sign * v % m.mod * sub, m.mod);
        }
        sign = -sign;
    }
    return acc;
}

}  // namespace

i64 Mat::det() const {
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    return det_rec(*this, cols, 0);
}

i64 Mat::smallest_prime_factor() const {
    for (i64 d = 2; d * d <= mod; ++d)
        if (mod % d == 0) return d;
    return mod;
}

bool Mat::is_zero() const {
    for (int i = 0; i < n * n; ++i)
        if (a[(size_t)i] != 0) return false;
    return true;
}

Mat Mat::inverse() const {
    i64 d = det();
    i64 dinv = mod_inv(d, mod);  // throws NonUnitError when not a unit
    // adjugate via cofactors
    Mat adj(n, mod);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat sub(n - 1 > 0 ? n - 1 : 1, mod);
            if (n == 1) {
                adj.at(0, 0) = 1 % mod;
                continue;
            }
            int ri = 0;
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                int ci = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    sub.at(ri, ci) = at(r, c);
                    ++ci;
                }
                ++ri;
            }
            i64 cof = sub.det();
            if ((i + j) & 1) cof = mod_reduce(-cof, mod);
            adj.at(j, i) = cof;
        }
    return adj.scaled(dinv);
}

i64 Mat::trace_form(const Mat& o) const {
    i64 t = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t = mod_reduce(t + at(i, k) * o.at(k, i), mod);
    return t;
}

u128 Mat::pack() const {
    u128 key = 0;
    for (int i = n * n - 1; i >= 0; --i) key = key * (u128)mod + (u128)a[(size_t)i];
    return key;
}

Mat Mat::unpack(u128 key, int n, i64 mod) {
    Mat m(n, mod);
    for (int i = 0; i < n * n; ++i) {
        m.a[(size_t)i] = (i64)(key % (u128)mod);
        key /= (u128)mod;
    }
    return m;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n; ++i) {
        os << "[";
        for (int j = 0; j < n; ++j) os << at(i, j) << (j + 1 < n ? "," : "");
        os << "]" << (i + 1 < n ? "," : "");
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Linear solving over Z/p^l via valuation-pivot diagonalisation.
// ---------------------------------------------------------------------------

namespace {

struct Diagonalization {
    // U * A * V = D with D diagonal (entries p^{v} or 0), U, V invertible.
    std::vector<std::vector<i64>> U, V, D;
    int rows, cols;
    i64 m;  // p^l
};

int val_of(i64 x, i64 p, int l) {
    if (x == 0) return l;
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

Diagonalization diagonalize(std::vector<std::vector<i64>> W, i64 p, int l) {
    i64 m = ipow(p, l);
    int rows = (int)W.size();
    int cols = rows ? (int)W[0].size() : 0;
    for (auto& row : W)
        for (auto& x : row) x = mod_reduce(x, m);

    std::vector<std::vector<i64>> U(rows, std::vector<i64>(rows, 0));
    std::vector<std::vector<i64>> V(cols, std::vector<i64>(cols, 0));
    for (int i = 0; i < rows; ++i) U[i][i] = 1;
    for (int i = 0; i < cols; ++i) V[i][i] = 1;

    auto row_addmul = [&](std::vector<std::vector<i64>>& M, int dst, int src, i64 f) {
        for (size_t j = 0; j < M[(size_t)dst].size(); ++j)
            M[(size_t)dst][j] = mod_reduce(M[(size_t)dst][j] + f * M[(size_t)src][j], m);
    };
    auto col_addmul = [&](std::vector<std::vector<i64>>& M, int dst, int src, i64 f) {
        for (auto& row : M) row[(size_t)dst] = mod_reduce(row[(size_t)dst] + f * row[(size_t)src], m);
    };

    int k = 0;
    while (k < rows && k < cols) {
        // global minimum-valuation pivot in the remaining block
        int bi = -1, bj = -1, bv = l;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                int v = val_of(W[(size_t)i][(size_t)j], p, l);
                if (v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi < 0) break;  // all remaining entries are zero
        std::swap(W[(size_t)k], W[(size_t)bi]);
        std::swap(U[(size_t)k], U[(size_t)bi]);
        if (bj != k) {
            for (auto& row : W) std::swap(row[(size_t)k], row[(size_t)bj]);
            for (auto& row : V) std::swap(row[(size_t)k], row[(size_t)bj]);
        }
        i64 piv = W[(size_t)k][(size_t)k];
        i64 pv = ipow(p, bv);
        i64 unit = piv / pv;
        i64 uinv = mod_inv(unit, m);
        for (auto& x : W[(size_t)k]) x = mod_reduce(x * uinv, m);
        for (auto& x : U[(size_t)k]) x = mod_reduce(x * uinv, m);
        // clear the pivot column with row operations
        for (int i = 0; i < rows; ++i) {
            if (i == k) continue;
            i64 e = W[(size_t)i][(size_t)k];
            if (e == 0) continue;
            i64 f = mod_reduce(-(e / pv), m);
            row_addmul(W, i, k, f);
            row_addmul(U, i, k, f);
        }
        // clear the pivot row with column operations
        for (int j = 0; j < cols; ++j) {
            if (j == k) continue;
            i64 e = W[(size_t)k][(size_t)j];
            if (e == 0) continue;
            i64 f = mod_reduce(-(e / pv), m);
            for (auto& row : W) row[(size_t)j] = mod_reduce(row[(size_t)j] + f * row[(size_t)k], m);
            col_addmul(V, j, k, f);
        }
        ++k;
    }
    return {std::move(U), std::move(V), std::move(W), rows, cols, m};
}

}  // namespace

u128 ModSolution::count() const {
    u128 c = 1;
    for (i64 o : kernel_orders) c *= (u128)o;
    return c;
}

std::optional<ModSolution> solve_modular(const std::vector<std::vector<i64>>& A,
                                         const std::vector<i64>& b, i64 p, int l) {
    if (A.size() != b.size()) throw std::invalid_argument("solve_modular: shape mismatch");
    int rows = (int)A.size();
    int cols = rows ? (int)A[0].size() : 0;
    if (rows == 0 || cols == 0) {
        ModSolution s;
        s.particular.assign((size_t)cols, 0);
        return s;
    }
    auto d = diagonalize(A, p, l);
    i64 m = d.m;

    // c = U b
    std::vector<i64> c((size_t)rows, 0);
    for (int i = 0; i < rows; ++i) {
        i64 acc = 0;
        for (int j = 0; j < rows; ++j) acc = mod_reduce(acc + d.U[(size_t)i][(size_t)j] * b[(size_t)j], m);
        c[(size_t)i] = acc;
    }

    std::vector<i64> y((size_t)cols, 0);
    std::vector<std::pair<int, i64>> kernel_dirs;  // (coordinate, additive order)
    int k = std::min(rows, cols);
    for (int i = 0; i < k; ++i) {
        i64 di = d.D[(size_t)i][(size_t)i];
        if (di == 0) {
            if (c[(size_t)i] != 0) return std::nullopt;
            kernel_dirs.push_back({i, m});
            continue;
        }
        int v = val_of(di, p, l);
        if (c[(size_t)i] % ipow(p, v) != 0) return std::nullopt;
        y[(size_t)i] = mod_reduce(c[(size_t)i] / ipow(p, v), m);
        if (v > 0) kernel_dirs.push_back({i, ipow(p, v)});
    }
    for (int i = k; i < rows; ++i)
        if (c[(size_t)i] != 0) return std::nullopt;
    for (int j = k; j < cols; ++j) kernel_dirs.push_back({j, m});

    auto apply_V = [&](const std::vector<i64>& yy) {
        std::vector<i64> x((size_t)cols, 0);
        for (int i = 0; i < cols; ++i) {
            i64 acc = 0;
            for (int j = 0; j < cols; ++j) acc = mod_reduce(acc + d.V[(size_t)i][(size_t)j] * yy[(size_t)j], m);
            x[(size_t)i] = acc;
        }
        return x;
    };

    ModSolution s;
    s.particular = apply_V(y);
    for (auto [coord, order] : kernel_dirs) {
        std::vector<i64> e((size_t)cols, 0);
        e[(size_t)coord] = m / order;  // generator of the coordinate's solution directions
        s.kernel.push_back(apply_V(e));
        s.kernel_orders.push_back(order);
    }
    return s;
}

ModSolution kernel_modular(const std::vector<std::vector<i64>>& A, i64 p, int l) {
    std::vector<i64> b(A.size(), 0);
    auto s = solve_modular(A, b, p, l);
    return *s;  // homogeneous systems are always consistent
}

// ---------------------------------------------------------------------------
// Polynomials over F_p.
// ---------------------------------------------------------------------------

namespace {

void poly_trim(PolyOverField& f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

}  // namespace

PolyOverField poly_make(i64 p, std::vector<i64> coeffs) {
    PolyOverField f;
    f.p = p;
    f.c = std::move(coeffs);
    for (auto& x : f.c) x = mod_reduce(x, p);
    poly_trim(f);
    return f;
}

PolyOverField poly_mul(const PolyOverField& a, const PolyOverField& b) {
    if (a.c.empty() || b.c.empty()) return poly_make(a.p, {});
    std::vector<i64> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = mod_reduce(c[i + j] + a.c[i] * b.c[j], a.p);
    return poly_make(a.p, std::move(c));
}

PolyOverField poly_divmod(const PolyOverField& a, const PolyOverField& b, PolyOverField* rem) {
    if (b.c.empty()) throw std::invalid_argument("poly_divmod: division by zero");
    PolyOverField r = a, q = poly_make(a.p, {});
    q.c.assign(a.c.size(), 0);
    i64 lead_inv = mod_inv(b.c.back(), a.p);
    while ((int)r.c.size() >= (int)b.c.size() && !r.c.empty()) {
        i64 f = mod_reduce(r.c.back() * lead_inv, a.p);
        size_t shift = r.c.size() - b.c.size();
        q.c[shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[shift + i] = mod_reduce(r.c[shift + i] - f * b.c[i], a.p);
        poly_trim(r);
    }
    poly_trim(q);
    if (rem) *rem = r;
    return q;
}

PolyOverField poly_gcd(const PolyOverField& a, const PolyOverField& b) {
    PolyOverField x = a, y = b;
    while (!y.c.empty()) {
        PolyOverField r;
        poly_divmod(x, y, &r);
        x = y;
        y = r;
    }
    if (!x.c.empty()) {
        i64 inv = mod_inv(x.c.back(), x.p);
        for (auto& v : x.c) v = mod_reduce(v * inv, x.p);
    }
    return x;
}

PolyOverField poly_lcm(const PolyOverField& a, const PolyOverField& b) {
    if (a.c.empty() || b.c.empty()) return poly_make(a.p, {});
    PolyOverField g = poly_gcd(a, b);
    return poly_divmod(poly_mul(a, b), g, nullptr);
}

bool poly_is_irreducible(const PolyOverField& f) {
    int deg = f.degree();
    if (deg <= 0) return false;
    if (deg == 1) return true;
    for (int d = 1; 2 * d <= deg; ++d) {
        i64 count = ipow(f.p, d);
        for (i64 mask = 0; mask < count; ++mask) {
            std::vector<i64> div(static_cast<size_t>(d) + 1);
            div[(size_t)d] = 1;
            i64 mm = mask;
            for (int i = 0; i < d; ++i) { div[(size_t)i] = mm % f.p; mm /= f.p; }
            PolyOverField dd = poly_make(f.p, div), rem;
            poly_divmod(f, dd, &rem);
            if (rem.c.empty()) return false;
        }
    }
    return true;
}

std::string PolyOverField::to_string() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = (int)c.size() - 1; i >= 0; --i) {
        if (c[(size_t)i] == 0) continue;
        if (!first) os << "+";
        if (i == 0 || c[(size_t)i] != 1) os << c[(size_t)i];
        if (i > 0) os << "t";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Characteristic / minimal polynomials.
// ---------------------------------------------------------------------------

namespace {

// polynomial arithmetic over Z/mod, constant-first vectors
using ZPoly = std::vector<i64>;

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, i64 mod) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = mod_reduce(c[i + j] + a[i] * b[j], mod);
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b, i64 mod, i64 sign) {
    ZPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        i64 x = i < a.size() ? a[i] : 0;
        i64 y = i < b.size() ? b[i] : 0;
        c[i] = mod_reduce(x + sign * y, mod);
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

ZPoly charpoly_rec(const std::vector<std::vector<ZPoly>>& m, std::vector<int>& cols, int row, i64 mod) {
    if (row == (int)m.size()) return {1 % mod};
    ZPoly acc;
    i64 sign = 1;
    for (size_t k = 0; k < cols.size(); ++k) {
        int c = cols[k];
        if (!m[(size_t)row][(size_t)c].empty()) {
            cols.erase(cols.begin() + (long)k);
            ZPoly sub = charpoly_rec(m, cols, row + 1, mod);
            cols.insert(cols.begin() + (long)k, c);
            acc = zp_add(acc, zp_mul(m[(size_t)row][(size_t)c], sub, mod), mod, sign);
        }
        sign = -sign;
    }
    return acc;
}

}  // namespace

std::vector<i64> charpoly_mod(const Mat& M) {
    int n = M.n;
    std::vector<std::vector<ZPoly>> tIm((size_t)n, std::vector<ZPoly>((size_t)n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ZPoly e;
            i64 c0 = mod_reduce(-M.at(i, j), M.mod);
            if (i == j) {
                e = {c0, 1};
                if (e[0] == 0 && e[1] == 0) e.clear();
            } else if (c0 != 0) {
                e = {c0};
            }
            tIm[(size_t)i][(size_t)j] = e;
        }
    std::vector<int> cols((size_t)n);
    for (int i = 0; i < n; ++i) cols[(size_t)i] = i;
    ZPoly chi = charpoly_rec(tIm, cols, 0, M.mod);
    chi.resize((size_t)n + 1, 0);
    return chi;
}

std::pair<PolyOverField, PolyOverField> charpoly_minpoly(const Mat& M) {
    i64 p = M.mod;
    if (!is_prime(p)) throw std::invalid_argument("charpoly_minpoly: matrix must be over F_p");
    int n = M.n;
    PolyOverField chi = poly_make(p, charpoly_mod(M));

    // minimal polynomial: lcm over standard basis vectors of the Krylov
    // annihilator, deterministic in index order
    PolyOverField mu = poly_make(p, {1});
    for (int s = 0; s < n; ++s) {
        // Krylov sequence from e_s with dependency tracking
        std::vector<std::vector<i64>> reduced;      // row-reduced spanning vectors
        std::vector<std::vector<i64>> combo;        // expression in Krylov terms
        std::vector<int> lead;
        std::vector<i64> v((size_t)n, 0);
        v[(size_t)s] = 1;
        for (int step = 0; step <= n; ++step) {
            std::vector<i64> w = v, cmb((size_t)n + 1, 0);
            cmb[(size_t)step] = 1;
            for (size_t t = 0; t < reduced.size(); ++t) {
                i64 x = w[(size_t)lead[t]];
                if (x == 0) continue;
                for (int j = 0; j < n; ++j) w[(size_t)j] = mod_reduce(w[(size_t)j] - x * reduced[t][(size_t)j], p);
                for (int j = 0; j <= n; ++j) cmb[(size_t)j] = mod_reduce(cmb[(size_t)j] - x * combo[t][(size_t)j], p);
            }
            int ld = -1;
            for (int j = 0; j < n; ++j)
                if (w[(size_t)j] != 0) { ld = j; break; }
            if (ld < 0) {
                // dependency: cmb encodes an annihilator of e_s
                PolyOverField ann = poly_make(p, cmb);
                i64 inv = mod_inv(ann.c.back(), p);
                for (auto& x : ann.c) x = mod_reduce(x * inv, p);
                mu = poly_lcm(mu, ann);
                break;
            }
            i64 inv = mod_inv(w[(size_t)ld], p);
            for (auto& x : w) x = mod_reduce(x * inv, p);
            for (auto& x : cmb) x = mod_reduce(x * inv, p);
            reduced.push_back(w);
            combo.push_back(cmb);
            lead.push_back(ld);
            // advance v -> M v
            std::vector<i64> nv((size_t)n, 0);
            for (int i = 0; i < n; ++i) {
                i64 acc = 0;
                for (int j = 0; j < n; ++j) acc = mod_reduce(acc + M.at(i, j) * v[(size_t)j], p);
                nv[(size_t)i] = acc;
            }
            v = nv;
        }
    }
    return {chi, mu};
}

bool cyclic_vector_test(const Mat& M) {
    i64 p = M.mod;
    if (!is_prime(p)) throw std::invalid_argument("cyclic_vector_test: matrix must be over F_p");
    int n = M.n;
    i64 total = ipow(p, n);
    for (i64 mask = 0; mask < total; ++mask) {
        std::vector<i64> v((size_t)n);
        i64 mm = mask;
        for (int i = 0; i < n; ++i) { v[(size_t)i] = mm % p; mm /= p; }
        Mat K(n, p);
        std::vector<i64> cur = v;
        for (int c = 0; c < n; ++c) {
            for (int i = 0; i < n; ++i) K.at(i, c) = cur[(size_t)i];
            std::vector<i64> nv((size_t)n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) nv[(size_t)i] = mod_reduce(nv[(size_t)i] + M.at(i, j) * cur[(size_t)j], p);
            cur = nv;
        }
        if (K.det() % p != 0) return true;
    }
    return false;
}

std::vector<std::vector<i64>> trace_form_gram(const std::vector<Mat>& basis, i64 p, int level) {
    size_t d = basis.size();
    if (d == 0) throw std::invalid_argument("trace_form_gram: empty basis");
    i64 m = ipow(p, level);
    std::vector<std::vector<i64>> g(d, std::vector<i64>(d, 0));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            g[i][j] = mod_reduce(basis[i].trace_form(basis[j]), m);
    return g;
}

i64 det_mod_p(std::vector<std::vector<i64>> rows, i64 p) {
    size_t n = rows.size();
    for (auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("det_mod_p: not square");
        for (auto& x : r) x = mod_reduce(x, p);
    }
    i64 det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && rows[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) { std::swap(rows[piv], rows[c]); det = mod_reduce(-det, p); }
        det = mod_reduce(det * rows[c][c], p);
        i64 inv = mod_inv(rows[c][c], p);
        for (size_t i = c + 1; i < n; ++i) {
            i64 f = mod_reduce(rows[i][c] * inv, p);
            if (f == 0) continue;
            for (size_t j = c; j < n; ++j) rows[i][j] = mod_reduce(rows[i][j] - f * rows[c][j], p);
        }
    }
    return det;
}

}  // namespace ringrep
