#pragma once

// Structure theory for small finite abelian groups given by multiplication
// tables: independent generators with their orders, the full character group,
// character extension from subgroups, 2-cocycles, and explicit trivialization
// certificates (a 1-cochain witnessing that a cocycle is a coboundary).

#include "ringrep/residue.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ringrep {

/// A finite group presented by index arithmetic.  Elements are 0..n-1.
struct GroupTable {
    int n = 0;
    int id = 0;
    std::function<int(int, int)> mul;
    int inv(int a) const;
    i64 order_of(int a) const;
    bool is_abelian() const;
};

/// Independent generators e_1..e_k with orders d_1..d_k such that every
/// element factors uniquely as prod e_i^{a_i}; coords gives the exponents.
class AbelianBasis {
public:
    explicit AbelianBasis(const GroupTable& g);

    const std::vector<int>& generators() const { return gens_; }
    const std::vector<i64>& orders() const { return orders_; }
    const std::vector<i64>& coords(int elem) const { return coords_[(size_t)elem]; }
    int order() const { return n_; }
    i64 exponent() const;

private:
    int n_;
    std::vector<int> gens_;
    std::vector<i64> orders_;
    std::vector<std::vector<i64>> coords_;
};

/// A character of an abelian group, stored as one exact value per element.
struct AbelianCharacter {
    std::vector<CycScalar> values;
    CycScalar operator()(int elem) const { return values[(size_t)elem]; }
    bool operator==(const AbelianCharacter& o) const;
};

/// All |G| characters, enumerated from an AbelianBasis in a deterministic
/// order (mixed-radix over the generator exponents).
std::vector<AbelianCharacter> all_characters(const GroupTable& g, const AbelianBasis& basis);

/// Extend a character defined on a subgroup (given by its element indices and
/// values) to the whole abelian group.  Principal roots chosen at each cyclic
/// extension step, so the result is deterministic.
AbelianCharacter extend_character(const GroupTable& g, const std::vector<int>& subgroup,
                                  const std::vector<CycScalar>& values_on_subgroup);

/// A normalized 2-cocycle on a finite group, value table c(g, h).
struct Cocycle2 {
    int n = 0;
    std::vector<CycScalar> table;  // row-major n x n

    const CycScalar& at(int g, int h) const { return table[(size_t)(g * n + h)]; }
    CycScalar& at(int g, int h) { return table[(size_t)(g * n + h)]; }

    static Cocycle2 trivial(int n);

    bool is_normalized(int id) const;
    /// Cocycle identity c(g,h) c(gh,k) = c(g,hk) c(h,k) on all triples
    /// (exact mode) or within tol (complex mode).
    bool is_cocycle(const GroupTable& g, double tol = 1e-9) const;

    Cocycle2 ratio(const Cocycle2& o) const;  // pointwise c / o
};

struct TrivializationCertificate {
    bool ok = false;
    std::vector<CycScalar> alpha;                    // c(g,h) = a(g) a(h) a(gh)^{-1}
    std::vector<std::pair<int, int>> obstruction;    // skew pairs when not a coboundary
};

/// Decide whether a 2-cocycle on an abelian group is a coboundary and
/// produce an explicit witness.  A cocycle class on an abelian group is
/// trivial iff the cocycle is symmetric; the witness is built by choosing
/// section values along an independent-generator decomposition.
TrivializationCertificate trivialize(const Cocycle2& c, const GroupTable& g,
                                     const AbelianBasis& basis, double tol = 1e-6);

/// Check c(g,h) = alpha(g) alpha(h) alpha(gh)^{-1} on all pairs.
bool verify_coboundary(const Cocycle2& c, const std::vector<CycScalar>& alpha,
                       const GroupTable& g, double tol = 1e-9);

}  // namespace ringrep
