#pragma once

// The Clifford-theory layer: the characters psi_beta of the congruence kernel
// K_l, adjoint orbits at the lower level, stabilizers, the centralizer
// character families (theta sets), the subgroup Z attached to beta for odd
// precision, and the one-dimensional construction for even precision.

#include "ringrep/abelian.hpp"
#include "ringrep/group_view.hpp"

namespace ringrep {

struct NotInKernelError : std::runtime_error {
    explicit NotInKernelError(const std::string& w) : std::runtime_error(w) {}
};
struct NotMultiplicativeError : std::runtime_error {
    explicit NotMultiplicativeError(const std::string& w) : std::runtime_error(w) {}
};
struct IncompatibleError : std::runtime_error {
    explicit IncompatibleError(const std::string& w) : std::runtime_error(w) {}
};
struct FactorizationMismatchError : std::runtime_error {
    explicit FactorizationMismatchError(const std::string& w) : std::runtime_error(w) {}
};

/// r = l + l' with the smallest l such that 0 < l' <= l.
struct LevelSplit {
    int r = 2, l = 1, lp = 1;
    static LevelSplit of(int r) {
        if (r < 2) throw std::invalid_argument("LevelSplit: need r >= 2");
        LevelSplit s;
        s.r = r;
        s.l = (r + 1) / 2;
        s.lp = r - s.l;
        return s;
    }
};

/// The character of K_l(Z/p^r) attached to beta:
/// 1 + p^l X  ->  exp(2 pi i B(X, beta) / p^{l'}).
class PsiBeta {
public:
    PsiBeta(const Mat& beta, i64 p, int r);

    const Mat& beta() const { return beta_; }
    const LevelSplit& split() const { return split_; }

    /// Evaluate on a kernel element given as a matrix over Z/p^r.
    CycScalar eval(const Mat& k) const;

private:
    Mat beta_;
    i64 p_;
    LevelSplit split_;
    i64 mod_;
};

/// Adjoint orbits of g(Z/p^{level}) under G(Z/p^{level}).
struct OrbitDecomposition {
    int level = 1;
    std::vector<Mat> reps;                // canonical representatives (minimal packed key)
    std::vector<i64> sizes;
    std::vector<RegularityReport> flags;  // of the representative reduced mod p
};

OrbitDecomposition orbit_decomposition(const GroupSpec& spec, i64 p, int level,
                                       i64 budget = 1000000);

/// Indices of the stabilizer {g : Ad(g)beta = beta mod p^{l'}} inside the view.
std::vector<u32> stabilizer_group(const FiniteGroupView& view, const Mat& beta);

/// A concrete finite matrix group given by an explicit element list.
struct MatGroup {
    int n = 0;
    i64 mod = 0;
    std::vector<Mat> elems;  // sorted by packed key
    std::unordered_map<u128, int, PackedHash> idx;
    int id = 0;

    static MatGroup from_elements(std::vector<Mat> elems);
    int mul(int a, int b) const;
    int index_of(const Mat& m) const;
    GroupTable table() const;
};

/// The unit centralizer G_beta(Z/p^r) = {g in G : g beta = beta g mod p^r},
/// built directly from the matrix commutant of beta (no ambient enumeration).
MatGroup centralizer_unit_group(const GroupSpec& spec, i64 p, int r, const Mat& beta,
                                i64 budget = 1000000);

/// The theta set of beta: all characters of G_beta(Z/p^r) that agree with
/// psi_beta on the intersection with K_l(Z/p^r).
struct ThetaFamily {
    MatGroup centralizer;            // G_beta(Z/p^r)
    AbelianBasis basis;              // its invariant-factor structure
    std::vector<int> intersection;   // local indices of G_beta cap K_l
    std::vector<AbelianCharacter> thetas;
};

ThetaFamily theta_set(const GroupSpec& spec, i64 p, int r, const Mat& beta,
                      i64 budget = 1000000);

/// Z(Z/p^r, beta) for odd r = 2l-1: the inverse image of g_beta(F_p) under
/// K_{l-1} -> g(F_p), together with the characters psi_{beta, rho}.
struct ZGroupData {
    std::vector<u32> z_indices;               // indices into the ambient view
    std::vector<Mat> gbeta_f_basis;           // basis of g_beta(F_p)
    /// psi_{beta, rho} value tables, one per rho (rho enumerated over all
    /// characters of g_beta(F_p) in mixed-radix order of the basis).
    std::vector<std::vector<CycScalar>> psi_rho;
    std::vector<std::vector<i64>> rho_exponents;  // the exponent vector of each rho
};

ZGroupData z_group_and_psi_rho(const FiniteGroupView& view, const Mat& beta);

/// The one-dimensional representation sigma(g h) = theta(g) psi_beta(h) of
/// the stabilizer, for even r.
struct SigmaEven {
    std::vector<u32> domain;        // view indices of G(Z/p^r, beta), sorted
    std::vector<CycScalar> values;  // aligned with domain
    CycScalar at(const FiniteGroupView& view, u32 elem) const;
};

SigmaEven sigma_even(const FiniteGroupView& view, const Mat& beta, const ThetaFamily& fam,
                     size_t theta_index);

}  // namespace ringrep
