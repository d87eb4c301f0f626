#pragma once

// Assembling the representations of the stabilizer (one-dimensional for even
// precision, intertwiner-twisted kernel representations for odd precision),
// inducing their characters up to the full group, and certifying the family
// against brute-force character theory: norms, orthogonality, restriction
// multiplicities and the exhaustion accounting.

#include "ringrep/clifford.hpp"
#include "ringrep/heisenberg.hpp"

namespace ringrep {

struct IncompatiblePairError : std::runtime_error {
    explicit IncompatiblePairError(const std::string& w) : std::runtime_error(w) {}
};

struct ConjugacyClasses {
    std::vector<u32> class_of;  // element index -> class id
    std::vector<u32> reps;      // class id -> representative (minimal index)
    std::vector<i64> sizes;
    size_t count() const { return reps.size(); }
};

ConjugacyClasses conjugacy_classes(const FiniteGroupView& view);

/// A class function on an enumerated group, one value per conjugacy class.
struct ClassFunction {
    std::vector<cplx> values;
};

cplx inner_product(const FiniteGroupView& view, const ConjugacyClasses& cls,
                   const ClassFunction& a, const ClassFunction& b);

/// Induced character of a function supported on a subgroup: the subgroup is
/// a sorted list of element indices with aligned values.
ClassFunction induced_character(const FiniteGroupView& view, const ConjugacyClasses& cls,
                                const std::vector<u32>& subgroup, const std::vector<cplx>& values);

/// The compatible pair (theta, rho): rho is recovered from theta through the
/// truncated-exponential lift of g_beta(F_p) and must come back a character.
std::vector<i64> recover_rho(const FiniteGroupView& view, const Mat& beta,
                             const ThetaFamily& fam, size_t theta_index);

/// Character table of sigma(gh) = theta(g) U_psi(g) pi(h) on the stabilizer,
/// together with the factorization used at each element so the full matrix
/// value can be rebuilt.
struct SigmaOdd {
    std::vector<u32> domain;        // sorted view indices of G(Z/p^r, beta)
    std::vector<cplx> char_values;  // tr sigma(x), aligned with domain
    std::vector<int> g_local;       // centralizer factor, local index
    std::vector<u32> h_index;       // kernel factor, view index
    int dim = 0;
};

SigmaOdd sigma_odd(const FiniteGroupView& view, const Mat& beta, const ThetaFamily& fam,
                   size_t theta_index, const std::vector<i64>& rho,
                   const KernelRepresentation& pi, const HomomorphicIntertwiners& u_psi);

/// Full certification of the family attached to one orbit representative.
struct FamilyCertificate {
    Mat beta;
    bool applicable = false;        // charpoly = minpoly and centralizer probes pass
    bool smooth_order = false;      // |G_beta(Z/p^r)| = |G_beta(F_p)| p^{(r-1) dim}
    size_t theta_count = 0;
    i64 sigma_dim = 0;
    i64 induced_dim = 0;
    std::vector<double> norms;               // <chi, chi> per theta
    double max_off_diagonal = 0.0;           // max |<chi_i, chi_j>|, i != j
    std::vector<double> psi_multiplicities;  // <Res_{K_l} chi, psi_beta> per theta
    double exhaustion_lhs = 0.0;             // sum_theta <Ind psi, chi_theta>^2
    double exhaustion_rhs = 0.0;             // <Ind psi, Ind psi>
    bool pass = false;
    std::string failure;
};

FamilyCertificate certify_family(const FiniteGroupView& view, const Mat& beta,
                                 const ConjugacyClasses& cls, u64 seed = 1,
                                 double tol = 1e-6);

}  // namespace ringrep
