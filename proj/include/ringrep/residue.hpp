#pragma once

// Exact arithmetic in the residue rings Z/p^r (p an odd prime), additive
// characters of conductor p^k, and root-of-unity scalars.  These are the
// scalars everything else in the library is built from.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ringrep {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct NonUnitError : std::runtime_error {
    explicit NonUnitError(const std::string& what) : std::runtime_error(what) {}
};

i64 ipow(i64 base, int exp);
bool is_prime(i64 n);
i64 gcd_i64(i64 a, i64 b);
i64 lcm_i64(i64 a, i64 b);

// x reduced into [0, m)
inline i64 mod_reduce(i64 x, i64 m) {
    i64 v = x % m;
    return v < 0 ? v + m : v;
}

i64 mod_mul(i64 a, i64 b, i64 m);
i64 mod_pow(i64 b, i64 e, i64 m);
i64 mod_inv(i64 a, i64 m);  // throws NonUnitError if gcd(a, m) != 1

/// Descriptor of the ring Z/p^r for an odd prime p and precision r >= 1.
struct Ring {
    i64 p = 3;
    int r = 1;
    i64 mod = 3;

    Ring() = default;
    Ring(i64 p_, int r_);

    bool operator==(const Ring& o) const { return p == o.p && r == o.r; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    /// p-adic valuation of x in [0, r]; valuation(0) = r.
    int valuation(i64 x) const;
    Ring reduced(int level) const { return Ring(p, level); }
};

/// An element of Z/p^r, stored as its canonical lift in [0, p^r).
struct RElem {
    i64 v = 0;
    Ring ring;

    RElem() = default;
    RElem(i64 value, const Ring& rg) : v(mod_reduce(value, rg.mod)), ring(rg) {}

    RElem operator+(const RElem& o) const { check(o); return RElem(v + o.v, ring); }
    RElem operator-(const RElem& o) const { check(o); return RElem(v - o.v, ring); }
    RElem operator*(const RElem& o) const { check(o); return RElem(mod_mul(v, o.v, ring.mod), ring); }
    RElem operator-() const { return RElem(-v, ring); }
    RElem inv() const;
    int valuation() const { return ring.valuation(v); }
    bool is_unit() const { return v % ring.p != 0; }
    bool is_zero() const { return v == 0; }

    bool operator==(const RElem& o) const { return v == o.v && ring == o.ring; }
    bool operator!=(const RElem& o) const { return !(*this == o); }

private:
    void check(const RElem& o) const {
        if (ring != o.ring) throw std::invalid_argument("RElem: mixed rings");
    }
};

/// A scalar that is either an exact root of unity exp(2*pi*i*e/M) or a dense
/// complex double.  Conversions between the two modes are always explicit.
class CycScalar {
public:
    CycScalar() : exact_(true), M_(1), e_(0) {}

    static CycScalar one() { return CycScalar(); }
    static CycScalar root(i64 M, i64 e);  // exp(2 pi i e / M), exact
    static CycScalar from_complex(std::complex<double> z) {
        CycScalar s;
        s.exact_ = false;
        s.z_ = z;
        return s;
    }

    bool is_exact() const { return exact_; }
    i64 modulus() const { return M_; }
    i64 exponent() const { return e_; }

    CycScalar operator*(const CycScalar& o) const;
    CycScalar inv() const;
    CycScalar conj() const { return inv_or_conj(); }
    CycScalar pow(i64 k) const;

    std::complex<double> to_complex() const;

    /// Exact equality; both operands must be exact.
    bool operator==(const CycScalar& o) const;
    bool operator!=(const CycScalar& o) const { return !(*this == o); }

    bool is_one() const { return exact_ ? e_ == 0 : std::abs(z_ - 1.0) < 1e-12; }

    /// Multiplicative order of an exact root of unity.
    i64 order() const;

    /// Rescale the exponent to a given modulus (must be a multiple of the
    /// minimal modulus).  Throws if the value does not live at that level.
    CycScalar rescaled(i64 M) const;

    /// Drop common factors of exponent and modulus.
    CycScalar normalized() const;

private:
    CycScalar inv_or_conj() const;  // same thing on the unit circle
    bool exact_;
    i64 M_ = 1, e_ = 0;
    std::complex<double> z_{1.0, 0.0};
};

/// The additive character x -> exp(2 pi i x / p^k) of Z/p^r, k <= r.
/// Restricted to multiples of p^k it is trivial; k is the conductor exponent.
struct AdditiveCharacter {
    Ring ring;
    int k = 1;

    AdditiveCharacter(const Ring& rg, int k_);

    CycScalar operator()(const RElem& x) const { return at(x.v); }
    /// Evaluate on an integer lift (only its class mod p^k matters).
    CycScalar at(i64 lift) const;
};

/// Round a complex number of modulus ~1 to the nearest M-th root of unity.
/// Throws if the distance exceeds the guard.
CycScalar round_to_root(std::complex<double> z, i64 M, double guard = 1e-6);

}  // namespace ringrep
