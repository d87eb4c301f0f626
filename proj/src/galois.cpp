#include "ringrep/galois.hpp"

#include <algorithm>

namespace ringrep {

namespace {

// Irreducibility over F_p by trial division with all monic polynomials of
// degree up to deg/2.  Fine at the degrees this library uses.
bool poly_irreducible_mod_p(const std::vector<i64>& h, i64 p) {
    int deg = (int)h.size() - 1;
    if (deg <= 0) return false;
    std::vector<i64> hp(h.size());
    for (size_t i = 0; i < h.size(); ++i) hp[i] = mod_reduce(h[i], p);
    if (deg == 1) return true;
    for (int d = 1; 2 * d <= deg; ++d) {
        // all monic divisor candidates of degree d
        i64 count = ipow(p, d);
        for (i64 mask = 0; mask < count; ++mask) {
            std::vector<i64> div(d + 1);
            div[d] = 1;
            i64 m = mask;
            for (int i = 0; i < d; ++i) { div[i] = m % p; m /= p; }
            // polynomial remainder of hp by div over F_p
            std::vector<i64> rem = hp;
            for (int i = deg; i >= d; --i) {
                i64 c = rem[i];
                if (c == 0) continue;
                for (int j = 0; j <= d; ++j)
                    rem[i - d + j] = mod_reduce(rem[i - d + j] - c * div[j], p);
            }
            bool zero = true;
            for (int i = 0; i < d; ++i)
                if (rem[i] != 0) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<i64> canonical_modulus_poly(i64 p, int f) {
    // Conway-style pinned lifts; constant-first coefficient order.
    if (f == 1) return {-1, 1};                    // t - 1: GR(p^r, 1) = Z/p^r
    if (p == 3 && f == 2) return {2, 2, 1};        // t^2 + 2t + 2
    if (p == 3 && f == 3) return {1, 2, 0, 1};     // t^3 + 2t + 1
    if (p == 3 && f == 4) return {2, 0, 0, 2, 1};  // t^4 + 2t^3 + 2
    if (p == 5 && f == 2) return {2, 4, 1};        // t^2 + 4t + 2
    if (p == 5 && f == 3) return {3, 3, 0, 1};     // t^3 + 3t + 3
    if (p == 7 && f == 2) return {3, 6, 1};        // t^2 + 6t + 3
    throw std::invalid_argument("canonical_modulus_poly: no pinned polynomial for (p, f)");
}

bool GaloisRingElem::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](i64 x) { return x == 0; });
}

GaloisRing::GaloisRing(i64 p, int r, int f) : GaloisRing(p, r, f, canonical_modulus_poly(p, f)) {}

GaloisRing::GaloisRing(i64 p, int r, int f, std::vector<i64> h)
    : base_(p, r), f_(f), h_(std::move(h)) {
    if (f_ < 1) throw std::invalid_argument("GaloisRing: f must be >= 1");
    if ((int)h_.size() != f_ + 1) throw std::invalid_argument("GaloisRing: modulus degree mismatch");
    for (auto& c : h_) c = mod_reduce(c, base_.mod);
    if (h_[f_] != 1) throw std::invalid_argument("GaloisRing: modulus must be monic");
    if (!poly_irreducible_mod_p(h_, base_.p))
        throw ReducibleModulusError("GaloisRing: modulus is reducible mod p");
    size_ = ipow(base_.mod, f_);
    init();
}

void GaloisRing::init() {
    // Frobenius image of t: the root of h congruent to t^p mod p,
    // found by Newton iteration from t^p.
    GaloisRingElem s = pow(gen(), base_.p);
    std::vector<i64> hprime(f_);
    for (int i = 1; i <= f_; ++i) hprime[i - 1] = mod_reduce((i64)i * h_[i], base_.mod);
    for (int it = 0; it < 2 * base_.r + 4; ++it) {
        GaloisRingElem val = eval_poly_at(s, h_);
        if (val.is_zero()) break;
        GaloisRingElem der = eval_poly_at(s, hprime);
        s = sub(s, mul(val, inv(der)));
    }
    if (!eval_poly_at(s, h_).is_zero())
        throw std::runtime_error("GaloisRing: Frobenius lift did not converge");
    frob_gen_ = s.c;
}

GaloisRingElem GaloisRing::zero() const { return {std::vector<i64>(f_, 0), this}; }

GaloisRingElem GaloisRing::one() const { return from_base(1); }

GaloisRingElem GaloisRing::gen() const {
    std::vector<i64> c(f_, 0);
    if (f_ == 1) {
        // t is congruent to the root of the linear modulus
        c[0] = mod_reduce(-h_[0], base_.mod);
    } else {
        c[1] = 1;
    }
    return {c, this};
}

GaloisRingElem GaloisRing::from_base(i64 x) const {
    std::vector<i64> c(f_, 0);
    c[0] = mod_reduce(x, base_.mod);
    return {c, this};
}

GaloisRingElem GaloisRing::make(std::vector<i64> coeffs) const {
    coeffs.resize(f_, 0);
    for (auto& c : coeffs) c = mod_reduce(c, base_.mod);
    return {coeffs, this};
}

GaloisRingElem GaloisRing::add(const GaloisRingElem& a, const GaloisRingElem& b) const {
    std::vector<i64> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = mod_reduce(a.c[i] + b.c[i], base_.mod);
    return {c, this};
}

GaloisRingElem GaloisRing::sub(const GaloisRingElem& a, const GaloisRingElem& b) const {
    std::vector<i64> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = mod_reduce(a.c[i] - b.c[i], base_.mod);
    return {c, this};
}

GaloisRingElem GaloisRing::neg(const GaloisRingElem& a) const {
    std::vector<i64> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = mod_reduce(-a.c[i], base_.mod);
    return {c, this};
}

std::vector<i64> GaloisRing::poly_mul_mod(const std::vector<i64>& a, const std::vector<i64>& b) const {
    std::vector<i64> prod(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f_; ++j)
            prod[i + j] = mod_reduce(prod[i + j] + mod_mul(a[i], b[j], base_.mod), base_.mod);
    }
    for (int i = 2 * f_ - 2; i >= f_; --i) {
        i64 c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < f_; ++j)
            prod[i - f_ + j] = mod_reduce(prod[i - f_ + j] - mod_mul(c, h_[j], base_.mod), base_.mod);
    }
    prod.resize(f_);
    return prod;
}

GaloisRingElem GaloisRing::mul(const GaloisRingElem& a, const GaloisRingElem& b) const {
    return {poly_mul_mod(a.c, b.c), this};
}

GaloisRingElem GaloisRing::pow(const GaloisRingElem& a, i64 e) const {
    GaloisRingElem acc = one(), base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool GaloisRing::is_unit(const GaloisRingElem& a) const {
    for (i64 c : a.c)
        if (c % base_.p != 0) return true;
    return false;
}

GaloisRingElem GaloisRing::inv(const GaloisRingElem& a) const {
    if (!is_unit(a)) throw NonUnitError("GaloisRing::inv: non-unit");
    i64 units = ipow(base_.p, (base_.r - 1) * f_) * (ipow(base_.p, f_) - 1);
    GaloisRingElem b = pow(a, units - 1);
    if (!(mul(a, b) == one())) throw std::runtime_error("GaloisRing::inv: inversion failed");
    return b;
}

GaloisRingElem GaloisRing::eval_poly_at(const GaloisRingElem& x, const std::vector<i64>& poly) const {
    GaloisRingElem acc = zero();
    for (int i = (int)poly.size() - 1; i >= 0; --i) {
        acc = mul(acc, x);
        acc = add(acc, from_base(poly[i]));
    }
    return acc;
}

GaloisRingElem GaloisRing::frobenius(const GaloisRingElem& a, int k) const {
    GaloisRingElem out = a;
    for (int it = 0; it < ((k % f_) + f_) % f_; ++it) {
        // apply a -> sum a_i * frob(t)^i
        GaloisRingElem img = {frob_gen_, this};
        GaloisRingElem acc = zero();
        for (int i = f_ - 1; i >= 0; --i) {
            acc = mul(acc, img);
            acc = add(acc, from_base(out.c[i]));
        }
        out = acc;
    }
    return out;
}

i64 GaloisRing::trace(const GaloisRingElem& a) const {
    GaloisRingElem acc = zero(), cur = a;
    for (int i = 0; i < f_; ++i) {
        acc = add(acc, cur);
        cur = frobenius(cur);
    }
    for (int i = 1; i < f_; ++i)
        if (acc.c[i] != 0) throw std::runtime_error("GaloisRing::trace: value escaped the base ring");
    return acc.c[0];
}

i64 GaloisRing::norm(const GaloisRingElem& a) const {
    GaloisRingElem acc = one(), cur = a;
    for (int i = 0; i < f_; ++i) {
        acc = mul(acc, cur);
        cur = frobenius(cur);
    }
    for (int i = 1; i < f_; ++i)
        if (acc.c[i] != 0) throw std::runtime_error("GaloisRing::norm: value escaped the base ring");
    return acc.c[0];
}

GaloisRingElem GaloisRing::reduce(const GaloisRingElem& a, const GaloisRing& target) const {
    if (target.f_ != f_ || target.base_.p != base_.p || target.base_.r > base_.r)
        throw std::invalid_argument("GaloisRing::reduce: target is not a quotient");
    std::vector<i64> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = mod_reduce(a.c[i], target.base_.mod);
    return {c, &target};
}

std::vector<GaloisRingElem> GaloisRing::all_elements() const {
    std::vector<GaloisRingElem> out;
    out.reserve((size_t)size_);
    for (i64 k = 0; k < size_; ++k) out.push_back(unpack((u64)k));
    return out;
}

u64 GaloisRing::pack(const GaloisRingElem& a) const {
    u64 key = 0;
    for (int i = f_ - 1; i >= 0; --i) key = key * (u64)base_.mod + (u64)a.c[i];
    return key;
}

GaloisRingElem GaloisRing::unpack(u64 key) const {
    std::vector<i64> c(f_);
    for (int i = 0; i < f_; ++i) { c[i] = (i64)(key % (u64)base_.mod); key /= (u64)base_.mod; }
    return {c, this};
}

}  // namespace ringrep
