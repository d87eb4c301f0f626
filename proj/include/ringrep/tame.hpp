#pragma once

// Unramified realizations: the Galois ring GR(p^r, f) embedded by its regular
// representation, generator tests, and the explicit unit-group character
// families for GL, SL, Sp and SO, cross-checked against the abstract
// centralizer character families.

#include "ringrep/clifford.hpp"
#include "ringrep/galois.hpp"

namespace ringrep {

struct ConstraintViolatedError : std::runtime_error {
    explicit ConstraintViolatedError(const std::string& w) : std::runtime_error(w) {}
};

enum class TameKind { GL, SL, Sp, SOEven, SOOdd };

struct UnramifiedDatum {
    TameKind kind = TameKind::GL;
    i64 p = 3;
    int r = 2;
    int f = 2;
    GaloisRing L;                          // GR(p^r, f)
    std::vector<GaloisRingElem> basis;     // Z/p^r-basis of O_L used for the embedding
    GaloisRingElem omega;                  // trace-zero unit (Sp / SO kinds)
    i64 epsilon = 1;                       // SO form scale
    i64 eta = 1;                           // SO-odd corner entry
    int m = 2;                             // ambient matrix size
    GroupSpec spec;                        // the matrix group the embedding lands in

    /// Regular-representation matrix of multiplication by x on the chosen
    /// basis (f x f block); for the SO-odd kind the ambient is (f+1) x (f+1)
    /// and `corner` fills the extra diagonal entry.
    Mat embed(const GaloisRingElem& x, i64 corner = 0) const;
};

/// Named presets: "gl-unram-f2", "sl-norm1-f2", "sp-quad-unram",
/// "so-even-f2", "so-odd-f2".
UnramifiedDatum tame_datum(const std::string& preset, i64 p, int r);

/// The canonical beta for the datum: the ring generator for GL, the fixed
/// trace-zero generator otherwise.
GaloisRingElem default_beta(const UnramifiedDatum& d);

/// True iff O_L = O[beta]: the residue of beta is moved by every nontrivial
/// residue automorphism.  When true, the characteristic polynomial of the
/// embedded matrix mod p is checked to be its minimal polynomial and
/// irreducible.
bool generator_test(const UnramifiedDatum& d, const GaloisRingElem& beta);

struct TameThetaReport {
    std::string preset;
    i64 p = 0;
    int r = 0;
    size_t unit_group_order = 0;       // |U| on the Galois-ring side
    size_t constraint_subgroup = 0;    // |U cap (1 + p^l O_L)|
    size_t lside_count = 0;            // characters satisfying the stated constraint
    size_t abstract_count = 0;         // abstract theta family size for the embedded beta
    bool counts_match = false;
    bool bijection_match = false;      // transported characters coincide as sets
    bool centralizer_match = false;    // embedded unit group = abstract centralizer
    bool exponent_convention_diff = false;  // the two stated exponent forms disagree
    bool form_identities = false;      // embedding preserves the symplectic/orthogonal form
    bool pass() const {
        return counts_match && bijection_match && centralizer_match && form_identities;
    }
};

TameThetaReport tame_cross_check(const UnramifiedDatum& d, const GaloisRingElem& beta,
                                 i64 budget = 1000000);

}  // namespace ringrep
