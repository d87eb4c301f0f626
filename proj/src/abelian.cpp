#include "ringrep/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace ringrep {

int GroupTable::inv(int a) const {
    int b = id, y = a;
    i64 o = order_of(a);
    for (i64 i = 0; i < o - 1; ++i) b = mul(b, y);
    return b;
}

i64 GroupTable::order_of(int a) const {
    i64 o = 1;
    int x = a;
    while (x != id) { x = mul(x, a); ++o; }
    return o;
}

bool GroupTable::is_abelian() const {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

namespace {

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

namespace {

// A quotient stage in the peel-off recursion: elements are canonical master
// labels, mul is the induced multiplication.
struct QuotientStage {
    std::vector<int> elems;
    std::function<int(int, int)> mul;
    int id;
};

i64 stage_order(const QuotientStage& s, int a) {
    i64 o = 1;
    int x = a;
    while (x != s.id) { x = s.mul(x, a); ++o; }
    return o;
}

// Basis of an abelian q-group by peeling off a maximal cyclic direct
// summand: take x of maximal order, pass to the quotient by <x>, recurse,
// and lift each quotient generator to one of exact order using an x-power
// correction (always possible because ord(x) is maximal).
std::vector<std::pair<int, i64>> peel_basis(const QuotientStage& s, i64 q) {
    if (s.elems.size() == 1) return {};
    int x = s.id;
    i64 best = 1;
    for (int e : s.elems) {
        i64 o = stage_order(s, e);
        if (o > best) { best = o; x = e; }
    }
    // powers of x and their positions
    std::vector<int> pw;
    std::map<int, i64> logx;
    int cur = s.id;
    for (i64 j = 0; j < best; ++j) {
        pw.push_back(cur);
        logx[cur] = j;
        cur = s.mul(cur, x);
    }
    // canonical coset representatives
    std::map<int, int> canon;
    for (int e : s.elems) {
        if (canon.count(e)) continue;
        int rep = e;
        std::vector<int> coset;
        int y = e;
        for (i64 j = 0; j < best; ++j) {
            coset.push_back(y);
            rep = std::min(rep, y);
            y = s.mul(y, x);
        }
        for (int c : coset) canon[c] = rep;
    }
    QuotientStage qs;
    qs.id = canon.at(s.id);
    for (int e : s.elems)
        if (canon.at(e) == e) qs.elems.push_back(e);
    auto parent_mul = s.mul;
    qs.mul = [parent_mul, canon](int a, int b) { return canon.at(parent_mul(a, b)); };

    auto sub = peel_basis(qs, q);
    std::vector<std::pair<int, i64>> out;
    out.push_back({x, best});
    for (auto& [h, v] : sub) {
        // h^{v} lands in <x>; divide out the x-part to get exact order v
        int z = s.id;
        for (i64 j = 0; j < v; ++j) z = s.mul(z, h);
        auto it = logx.find(z);
        if (it == logx.end()) throw std::logic_error("AbelianBasis: quotient power escaped <x>");
        i64 c = it->second;
        if (c % v != 0) throw std::logic_error("AbelianBasis: lifting correction not divisible");
        int adj = s.mul(h, pw[(size_t)mod_reduce(-(c / v), best)]);
        if (stage_order(s, adj) != v)
            throw std::logic_error("AbelianBasis: lifted generator has unexpected order");
        out.push_back({adj, v});
    }
    return out;
}

}  // namespace

AbelianBasis::AbelianBasis(const GroupTable& g) : n_(g.n) {
    if (!g.is_abelian()) throw std::invalid_argument("AbelianBasis: group is not abelian");

    std::vector<i64> elem_order((size_t)g.n);
    for (int i = 0; i < g.n; ++i) elem_order[(size_t)i] = g.order_of(i);

    for (i64 q : prime_factors((i64)g.n)) {
        // Sylow q-part: elements of q-power order
        QuotientStage stage;
        stage.id = g.id;
        stage.mul = g.mul;
        for (int i = 0; i < g.n; ++i) {
            i64 o = elem_order[(size_t)i];
            while (o % q == 0) o /= q;
            if (o == 1) stage.elems.push_back(i);
        }
        for (auto& [gen, ord] : peel_basis(stage, q)) {
            gens_.push_back(gen);
            orders_.push_back(ord);
        }
    }

    // global coordinates: enumerate all tuples, require a bijection
    coords_.assign((size_t)g.n, {});
    std::vector<bool> seen((size_t)g.n, false);
    std::vector<i64> tuple(gens_.size(), 0);
    u128 total = 1;
    for (i64 o : orders_) total *= (u128)o;
    if (total != (u128)g.n) throw std::logic_error("AbelianBasis: order product mismatch");
    // precomputed generator powers
    std::vector<std::vector<int>> pows(gens_.size());
    for (size_t i = 0; i < gens_.size(); ++i) {
        pows[i].resize((size_t)orders_[i]);
        int cur = g.id;
        for (i64 t = 0; t < orders_[i]; ++t) {
            pows[i][(size_t)t] = cur;
            cur = g.mul(cur, gens_[i]);
        }
    }
    while (true) {
        int e = g.id;
        for (size_t i = 0; i < gens_.size(); ++i) e = g.mul(e, pows[i][(size_t)tuple[i]]);
        if (seen[(size_t)e]) throw std::logic_error("AbelianBasis: coordinate collision");
        seen[(size_t)e] = true;
        coords_[(size_t)e] = tuple;
        size_t k = 0;
        while (k < tuple.size()) {
            if (++tuple[k] < orders_[k]) break;
            tuple[k] = 0;
            ++k;
        }
        if (gens_.empty() || k == tuple.size()) break;
    }
}

i64 AbelianBasis::exponent() const {
    i64 e = 1;
    for (i64 o : orders_) e = lcm_i64(e, o);
    return e;
}

bool AbelianCharacter::operator==(const AbelianCharacter& o) const {
    if (values.size() != o.values.size()) return false;
    for (size_t i = 0; i < values.size(); ++i)
        if (!(values[i] == o.values[i])) return false;
    return true;
}

std::vector<AbelianCharacter> all_characters(const GroupTable& g, const AbelianBasis& basis) {
    const auto& orders = basis.orders();
    std::vector<AbelianCharacter> out;
    out.reserve((size_t)g.n);
    std::vector<i64> expo(orders.size(), 0);
    while (true) {
        AbelianCharacter chi;
        chi.values.resize((size_t)g.n);
        for (int e = 0; e < g.n; ++e) {
            const auto& c = basis.coords(e);
            CycScalar v = CycScalar::one();
            for (size_t i = 0; i < orders.size(); ++i)
                v = v * CycScalar::root(orders[i], expo[i] * c[i]);
            chi.values[(size_t)e] = v;
        }
        out.push_back(std::move(chi));
        size_t k = 0;
        while (k < expo.size()) {
            if (++expo[k] < orders[k]) break;
            expo[k] = 0;
            ++k;
        }
        if (expo.empty() || k == expo.size()) break;
    }
    if ((int)out.size() != g.n)
        throw std::logic_error("all_characters: count mismatch");
    return out;
}

AbelianCharacter extend_character(const GroupTable& g, const std::vector<int>& subgroup,
                                  const std::vector<CycScalar>& values_on_subgroup) {
    if (subgroup.size() != values_on_subgroup.size())
        throw std::invalid_argument("extend_character: size mismatch");
    std::map<int, CycScalar> val;
    for (size_t i = 0; i < subgroup.size(); ++i) val[subgroup[i]] = values_on_subgroup[i];
    if (!val.count(g.id)) throw std::invalid_argument("extend_character: subgroup misses identity");

    while ((int)val.size() < g.n) {
        int x = -1;
        for (int i = 0; i < g.n; ++i)
            if (!val.count(i)) { x = i; break; }
        // minimal k >= 1 with x^k in the current domain
        i64 k = 1;
        int y = x;
        while (!val.count(y)) { y = g.mul(y, x); ++k; }
        CycScalar target = val[y];
        CycScalar t;
        if (target.is_exact()) {
            t = CycScalar::root(target.modulus() * k, target.exponent());
        } else {
            auto z = target.to_complex();
            t = CycScalar::from_complex(std::polar(1.0, std::arg(z) / (double)k));
        }
        std::map<int, CycScalar> next = val;
        for (auto& [s, vs] : val) {
            int cur = s;
            CycScalar acc = vs;
            for (i64 j = 1; j < k; ++j) {
                cur = g.mul(cur, x);
                acc = acc * t;
                next.emplace(cur, acc);
            }
        }
        val = std::move(next);
    }
    AbelianCharacter chi;
    chi.values.resize((size_t)g.n);
    for (auto& [e, v] : val) chi.values[(size_t)e] = v;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            CycScalar lhs = chi.values[(size_t)g.mul(a, b)];
            CycScalar rhs = chi.values[(size_t)a] * chi.values[(size_t)b];
            if (lhs.is_exact() && rhs.is_exact()) {
                if (!(lhs == rhs)) throw std::logic_error("extend_character: extension is not a character");
            } else if (std::abs(lhs.to_complex() - rhs.to_complex()) > 1e-9) {
                throw std::logic_error("extend_character: extension is not a character");
            }
        }
    return chi;
}

Cocycle2 Cocycle2::trivial(int n) {
    Cocycle2 c;
    c.n = n;
    c.table.assign((size_t)(n * n), CycScalar::one());
    return c;
}

bool Cocycle2::is_normalized(int id) const {
    for (int i = 0; i < n; ++i)
        if (!at(id, i).is_one() || !at(i, id).is_one()) return false;
    return true;
}

bool Cocycle2::is_cocycle(const GroupTable& g, double tol) const {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                CycScalar lhs = at(a, b) * at(g.mul(a, b), c);
                CycScalar rhs = at(a, g.mul(b, c)) * at(b, c);
                if (lhs.is_exact() && rhs.is_exact()) {
                    if (!(lhs == rhs)) return false;
                } else if (std::abs(lhs.to_complex() - rhs.to_complex()) > tol) {
                    return false;
                }
            }
    return true;
}

Cocycle2 Cocycle2::ratio(const Cocycle2& o) const {
    if (n != o.n) throw std::invalid_argument("Cocycle2::ratio: size mismatch");
    Cocycle2 out;
    out.n = n;
    out.table.resize(table.size());
    for (size_t i = 0; i < table.size(); ++i) out.table[i] = table[i] * o.table[i].inv();
    return out;
}

TrivializationCertificate trivialize(const Cocycle2& c, const GroupTable& g,
                                     const AbelianBasis& basis, double tol) {
    TrivializationCertificate cert;
    // a cocycle class on an abelian group is trivial iff the cocycle is symmetric
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            const CycScalar &x = c.at(a, b), &y = c.at(b, a);
            bool equal;
            if (x.is_exact() && y.is_exact()) equal = (x == y);
            else equal = std::abs(x.to_complex() - y.to_complex()) <= tol;
            if (!equal) cert.obstruction.push_back({a, b});
        }
    if (!cert.obstruction.empty()) {
        cert.ok = false;
        return cert;
    }

    const auto& gens = basis.generators();
    const auto& orders = basis.orders();

    // extension-group arithmetic: (g, s)(h, t) = (gh, s t c(g, h));
    // pick section scalars t_i with (e_i, t_i)^{d_i} = identity
    std::vector<CycScalar> tvals(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        CycScalar w = CycScalar::one();
        int cur = gens[i];
        for (i64 j = 1; j < orders[i]; ++j) {
            w = w * c.at(cur, gens[i]);
            cur = g.mul(cur, gens[i]);
        }
        if (cur != g.id) throw std::logic_error("trivialize: generator order mismatch");
        if (w.is_exact()) {
            tvals[i] = CycScalar::root(w.modulus() * orders[i], -w.exponent());
        } else {
            tvals[i] = CycScalar::from_complex(std::polar(1.0, -std::arg(w.to_complex()) / (double)orders[i]));
        }
    }

    // alpha from the fixed-order section product
    cert.alpha.assign((size_t)g.n, CycScalar::one());
    for (int e = 0; e < g.n; ++e) {
        const auto& coords = basis.coords(e);
        int cur = g.id;
        CycScalar s = CycScalar::one();
        for (size_t i = 0; i < gens.size(); ++i)
            for (i64 j = 0; j < coords[i]; ++j) {
                s = s * tvals[i] * c.at(cur, gens[i]);
                cur = g.mul(cur, gens[i]);
            }
        if (cur != e) throw std::logic_error("trivialize: coordinate product mismatch");
        cert.alpha[(size_t)e] = s.inv();  // convention: c(g,h) = a(g) a(h) a(gh)^{-1}
    }
    cert.ok = verify_coboundary(c, cert.alpha, g, std::max(tol, 1e-9));
    if (!cert.ok) throw std::logic_error("trivialize: constructed witness failed verification");
    return cert;
}

bool verify_coboundary(const Cocycle2& c, const std::vector<CycScalar>& alpha,
                       const GroupTable& g, double tol) {
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            CycScalar lhs = c.at(a, b);
            CycScalar rhs = alpha[(size_t)a] * alpha[(size_t)b] * alpha[(size_t)g.mul(a, b)].inv();
            if (lhs.is_exact() && rhs.is_exact()) {
                if (!(lhs == rhs)) return false;
            } else if (std::abs(lhs.to_complex() - rhs.to_complex()) > tol) {
                return false;
            }
        }
    return true;
}

}  // namespace ringrep
