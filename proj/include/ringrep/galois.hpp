#pragma once

// Unramified extensions of Z/p^r: the Galois ring GR(p^r, f), realised as
// (Z/p^r)[t] / (h(t)) for a fixed monic lift h of an irreducible degree-f
// polynomial over F_p.  Carries the Frobenius automorphism, trace and norm
// down to Z/p^r.

#include "ringrep/residue.hpp"

#include <memory>
#include <vector>

namespace ringrep {

struct ReducibleModulusError : std::runtime_error {
    explicit ReducibleModulusError(const std::string& w) : std::runtime_error(w) {}
};

class GaloisRing;

/// Element of GR(p^r, f): coefficient vector of length f w.r.t. the image
/// of t, entries canonical in [0, p^r).
struct GaloisRingElem {
    std::vector<i64> c;
    const GaloisRing* parent = nullptr;

    bool is_zero() const;
    bool operator==(const GaloisRingElem& o) const { return c == o.c; }
    bool operator!=(const GaloisRingElem& o) const { return !(*this == o); }
};

class GaloisRing {
public:
    GaloisRing() : GaloisRing(3, 1, 1) {}
    /// h defaults to the pinned canonical lift for (p, f); a custom monic
    /// degree-f lift may be supplied (checked irreducible mod p).
    GaloisRing(i64 p, int r, int f);
    GaloisRing(i64 p, int r, int f, std::vector<i64> h);

    const Ring& base() const { return base_; }
    int f() const { return f_; }
    i64 size() const { return size_; }
    const std::vector<i64>& modulus_poly() const { return h_; }

    GaloisRingElem zero() const;
    GaloisRingElem one() const;
    GaloisRingElem gen() const;                       // image of t
    GaloisRingElem from_base(i64 x) const;            // Z/p^r -> GR
    GaloisRingElem make(std::vector<i64> coeffs) const;

    GaloisRingElem add(const GaloisRingElem& a, const GaloisRingElem& b) const;
    GaloisRingElem sub(const GaloisRingElem& a, const GaloisRingElem& b) const;
    GaloisRingElem neg(const GaloisRingElem& a) const;
    GaloisRingElem mul(const GaloisRingElem& a, const GaloisRingElem& b) const;
    GaloisRingElem pow(const GaloisRingElem& a, i64 e) const;
    GaloisRingElem inv(const GaloisRingElem& a) const;  // throws NonUnitError
    bool is_unit(const GaloisRingElem& a) const;

    /// The ring automorphism over Z/p^r reducing to x -> x^p on the residue
    /// field; frobenius(a, k) applies it k times.
    GaloisRingElem frobenius(const GaloisRingElem& a, int k = 1) const;

    i64 trace(const GaloisRingElem& a) const;  // T: GR -> Z/p^r
    i64 norm(const GaloisRingElem& a) const;   // N: GR -> Z/p^r

    /// Reduction GR(p^r, f) -> GR(p^l, f) coefficientwise, 1 <= l <= r.
    GaloisRingElem reduce(const GaloisRingElem& a, const GaloisRing& target) const;

    /// Enumerate all p^{rf} elements in a fixed (lexicographic) order.
    std::vector<GaloisRingElem> all_elements() const;

    u64 pack(const GaloisRingElem& a) const;
    GaloisRingElem unpack(u64 key) const;

private:
    Ring base_;
    int f_;
    i64 size_;
    std::vector<i64> h_;          // monic, degree f, coefficients mod p^r
    std::vector<i64> frob_gen_;   // image of t under Frobenius

    void init();
    std::vector<i64> poly_mul_mod(const std::vector<i64>& a, const std::vector<i64>& b) const;
    GaloisRingElem eval_poly_at(const GaloisRingElem& x, const std::vector<i64>& poly) const;
};

/// Pinned canonical monic lifts of irreducible polynomials, per (p, f).
std::vector<i64> canonical_modulus_poly(i64 p, int f);

}  // namespace ringrep
