#include "ringrep/residue.hpp"

#include <cmath>
#include <numbers>

namespace ringrep {

i64 ipow(i64 base, int exp) {
    i64 v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i64 gcd_i64(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

i64 lcm_i64(i64 a, i64 b) { return a / gcd_i64(a, b) * b; }

i64 mod_mul(i64 a, i64 b, i64 m) {
    return (i64)((u128)mod_reduce(a, m) * (u128)mod_reduce(b, m) % (u128)m);
}

i64 mod_pow(i64 b, i64 e, i64 m) {
    i64 acc = 1 % m;
    b = mod_reduce(b, m);
    while (e > 0) {
        if (e & 1) acc = mod_mul(acc, b, m);
        b = mod_mul(b, b, m);
        e >>= 1;
    }
    return acc;
}

i64 mod_inv(i64 a, i64 m) {
    a = mod_reduce(a, m);
    i64 g = m, x = 0, x1 = 1, a1 = a;
    while (a1) {
        i64 q = g / a1;
        i64 t = g - q * a1; g = a1; a1 = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw NonUnitError("mod_inv: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
    return mod_reduce(x, m);
}

Ring::Ring(i64 p_, int r_) : p(p_), r(r_) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("Ring: p must be an odd prime");
    if (r < 1) throw std::invalid_argument("Ring: precision r must be >= 1");
    mod = ipow(p, r);
}

int Ring::valuation(i64 x) const {
    x = mod_reduce(x, mod);
    if (x == 0) return r;
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

RElem RElem::inv() const {
    if (!is_unit()) throw NonUnitError("RElem::inv: p divides value");
    return RElem(mod_inv(v, ring.mod), ring);
}

CycScalar CycScalar::root(i64 M, i64 e) {
    if (M < 1) throw std::invalid_argument("CycScalar::root: modulus must be positive");
    CycScalar s;
    s.exact_ = true;
    s.M_ = M;
    s.e_ = mod_reduce(e, M);
    return s;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
    if (exact_ && o.exact_) {
        i64 M = lcm_i64(M_, o.M_);
        return root(M, e_ * (M / M_) + o.e_ * (M / o.M_));
    }
    return from_complex(to_complex() * o.to_complex());
}

CycScalar CycScalar::inv_or_conj() const {
    if (exact_) return root(M_, -e_);
    return from_complex(std::conj(z_));
}

CycScalar CycScalar::inv() const {
    if (exact_) return root(M_, -e_);
    return from_complex(1.0 / z_);
}

CycScalar CycScalar::pow(i64 k) const {
    if (exact_) return root(M_, mod_mul(mod_reduce(k, M_), e_, M_));
    return from_complex(std::pow(z_, (double)k));
}

std::complex<double> CycScalar::to_complex() const {
    if (!exact_) return z_;
    double t = 2.0 * std::numbers::pi * (double)e_ / (double)M_;
    return {std::cos(t), std::sin(t)};
}

bool CycScalar::operator==(const CycScalar& o) const {
    if (!exact_ || !o.exact_) throw std::logic_error("CycScalar::==: exact comparison of complex mode");
    i64 M = lcm_i64(M_, o.M_);
    return mod_reduce(e_ * (M / M_), M) == mod_reduce(o.e_ * (M / o.M_), M);
}

i64 CycScalar::order() const {
    if (!exact_) throw std::logic_error("CycScalar::order: complex mode");
    return M_ / gcd_i64(M_, e_ == 0 ? M_ : e_);
}

CycScalar CycScalar::rescaled(i64 M) const {
    if (!exact_) throw std::logic_error("CycScalar::rescaled: complex mode");
    if (M % M_ != 0) throw std::invalid_argument("CycScalar::rescaled: incompatible modulus");
    return root(M, e_ * (M / M_));
}

CycScalar CycScalar::normalized() const {
    if (!exact_) return *this;
    if (e_ == 0) return root(1, 0);
    i64 g = gcd_i64(e_, M_);
    return root(M_ / g, e_ / g);
}

AdditiveCharacter::AdditiveCharacter(const Ring& rg, int k_) : ring(rg), k(k_) {
    if (k < 1 || k > ring.r) throw std::invalid_argument("AdditiveCharacter: need 0 < k <= r");
}

CycScalar AdditiveCharacter::at(i64 lift) const {
    i64 pk = ipow(ring.p, k);
    return CycScalar::root(pk, mod_reduce(lift, pk));
}

CycScalar round_to_root(std::complex<double> z, i64 M, double guard) {
    double arg = std::arg(z);
    double scaled = arg * (double)M / (2.0 * std::numbers::pi);
    i64 e = (i64)std::llround(scaled);
    CycScalar s = CycScalar::root(M, e);
    if (std::abs(z - s.to_complex()) > guard)
        throw std::runtime_error("round_to_root: value is not within guard of a root of unity");
    return s;
}

}  // namespace ringrep
