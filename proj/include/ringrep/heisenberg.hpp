#pragma once

// The symplectic quotient V = g(F_p)/g_beta(F_p) with the form B([X,Y], beta),
// linear sections and the associated 2-cocycle on the centralizer, the
// Schrodinger model of the Heisenberg group of V, the kernel representation
// it induces at odd precision, and intertwiner families with their cocycle.

#include "ringrep/abelian.hpp"
#include "ringrep/clifford.hpp"
#include "ringrep/group_view.hpp"

#include <complex>

namespace ringrep {

struct DegenerateFormError : std::runtime_error {
    explicit DegenerateFormError(const std::string& w) : std::runtime_error(w) {}
};
struct GammaEscapesError : std::runtime_error {
    explicit GammaEscapesError(const std::string& w) : std::runtime_error(w) {}
};
struct NonlinearRhoError : std::runtime_error {
    explicit NonlinearRhoError(const std::string& w) : std::runtime_error(w) {}
};
struct IntertwinerNotFoundError : std::runtime_error {
    explicit IntertwinerNotFoundError(const std::string& w) : std::runtime_error(w) {}
};

using cplx = std::complex<double>;
using CMat = std::vector<cplx>;  // dense row-major square

CMat cmat_identity(int dim);
CMat cmat_mul(const CMat& a, const CMat& b, int dim);
CMat cmat_inv(const CMat& a, int dim);
cplx cmat_det(const CMat& a, int dim);
cplx cmat_trace(const CMat& a, int dim);
double cmat_dist(const CMat& a, const CMat& b, int dim);
CMat cmat_scale(const CMat& a, cplx s);

/// The symplectic space attached to beta over F_p.  A fixed complement of
/// g_beta inside the ambient algebra identifies the quotient with F_p^d; all
/// vectors are coordinate vectors with respect to that identification.
class SymplecticSpace {
public:
    /// ambient: basis of the ambient Lie algebra g(F_p); the default section
    /// is the trace-form orthogonal complement of g_beta when that is a
    /// genuine complement, otherwise a deterministic basis extension.
    SymplecticSpace(i64 p, std::vector<Mat> ambient_basis, const Mat& beta_bar);
    /// Impose an explicit complement (its classes become the coordinates).
    SymplecticSpace(i64 p, std::vector<Mat> ambient_basis, const Mat& beta_bar,
                    std::vector<Mat> complement);

    i64 p() const { return p_; }
    int dim() const { return d_; }
    int half() const { return d_ / 2; }
    const Mat& beta_bar() const { return beta_; }
    const std::vector<Mat>& ambient_basis() const { return ambient_; }
    const std::vector<Mat>& central_basis() const { return central_; }
    const std::vector<Mat>& default_section() const { return complement_; }

    /// X in the ambient algebra -> (class coordinates, central component).
    std::pair<std::vector<i64>, Mat> decompose(const Mat& X) const;
    /// Apply a section (list of d matrices) to a coordinate vector.
    Mat apply_section(const std::vector<Mat>& section, const std::vector<i64>& v) const;

    i64 pairing(const std::vector<i64>& u, const std::vector<i64>& v) const;

    /// Coordinates in the symplectic basis: (a, b) with v = sum a_i e_i + b_i f_i.
    std::pair<std::vector<i64>, std::vector<i64>> polarize(const std::vector<i64>& v) const;

    /// A deterministic random section for independence experiments:
    /// default complement shifted by seeded central elements.
    std::vector<Mat> random_section(u64 seed) const;

private:
    void build(std::vector<Mat> complement_or_empty);
    i64 p_;
    std::vector<Mat> ambient_;
    Mat beta_;
    std::vector<Mat> central_;     // basis of g_beta(F_p)
    std::vector<Mat> complement_;  // d matrices, the default section
    int d_ = 0;
    std::vector<std::vector<i64>> gram_;       // d x d pairing table
    std::vector<std::vector<i64>> symp_rows_;  // rows e_1..e_m, f_1..f_m in quotient coords
    std::vector<std::vector<i64>> symp_inv_;   // inverse of the basis-change matrix
};

/// The 2-cocycle on a centralizer group built from a character rho of
/// g_beta(F_p) and a linear section.
struct SchurCocycle {
    MatGroup group;                       // acting group of level-1 matrices
    Cocycle2 cocycle;                     // exact values, p-th roots of unity
    std::vector<std::vector<i64>> v_g;    // the solved vectors, one per element
};

/// rho_exponents has one entry per central basis element: rho(Y) =
/// exp(2 pi i sum_i rho_i y_i / p).  The group must fix g_beta pointwise.
SchurCocycle schur_cocycle(const SymplecticSpace& V, const MatGroup& group,
                           const std::vector<i64>& rho_exponents,
                           const std::vector<Mat>* section = nullptr);

/// The classes of the cocycles from several sections agree: every ratio is
/// certified a coboundary, and the closed-form comparison cochain built from
/// the section difference is checked where applicable.
bool section_independence_check(const SymplecticSpace& V, const MatGroup& group,
                                const std::vector<i64>& rho_exponents,
                                const std::vector<std::vector<Mat>>& sections);

/// Compare the cocycle of (G, beta, rho) with the one computed inside gl_n
/// with the product section and the pulled-back character; tables must agree
/// pointwise on the embedded centralizer.
bool restriction_compare(const GroupSpec& spec, i64 p, const Mat& beta_bar,
                         const std::vector<i64>& rho_exponents);

/// Monomial matrix: column j carries scalar scal[j] into row row_of[j].
struct MonomialMat {
    int dim = 0;
    std::vector<int> row_of;
    std::vector<CycScalar> scal;

    static MonomialMat identity(int dim);
    MonomialMat operator*(const MonomialMat& o) const;
    MonomialMat inverse() const;
    bool operator==(const MonomialMat& o) const;
    MonomialMat scaled(const CycScalar& s) const;
    cplx trace() const;
    CMat dense() const;
    bool is_scalar(CycScalar* value = nullptr) const;
};

/// The Schrodinger model of the Heisenberg group of V on functions on the
/// first polarization half.
class SchrodingerModel {
public:
    explicit SchrodingerModel(const SymplecticSpace& V);
    int dim() const { return dim_; }
    const SymplecticSpace& space() const { return *V_; }

    /// pi(v, s) as a monomial matrix; s must be exact.
    MonomialMat pi(const std::vector<i64>& v, const CycScalar& s) const;

private:
    const SymplecticSpace* V_;
    int dim_;
    std::vector<std::vector<i64>> points_;  // W'-coordinate tuples by index
};

/// The representation of K_{l-1}(Z/p^r), r = 2l-1, attached to (beta, rho),
/// realised by exact monomial matrices via the Schrodinger model.
struct KernelRepresentation {
    const FiniteGroupView* view = nullptr;
    Mat beta;
    std::vector<i64> rho;
    int dim = 0;
    std::vector<u32> kernel;          // K_{l-1} indices, ascending
    std::vector<MonomialMat> value;   // aligned with kernel

    const MonomialMat& at(u32 view_index) const;
};

KernelRepresentation pi_beta_rho(const FiniteGroupView& view, const Mat& beta,
                                 const std::vector<i64>& rho_exponents,
                                 const SymplecticSpace& V, i64 pair_budget = 1000000);

/// Intertwiners U(g) for g in G_beta(Z/p^r) acting on the kernel
/// representation, determinant-normalised so that the associated cocycle
/// takes values in the dim-th roots of unity exactly.
struct IntertwinerFamily {
    MatGroup gbeta;                 // G_beta(Z/p^r)
    std::vector<CMat> U;            // aligned with gbeta.elems, det = 1
    Cocycle2 c_u;                   // exact, modulus = dim
    double max_intertwining_residual = 0.0;
};

IntertwinerFamily intertwiner_family(const FiniteGroupView& view,
                                     const KernelRepresentation& pi, const MatGroup& gbeta,
                                     u64 seed = 1, int retry_budget = 64);

/// A homomorphic rescaling of an intertwiner family: U_psi(g) = U(g) scaled
/// so that U_psi is a homomorphism equal to 1 on gbeta cap K_{l-1}.
struct HomomorphicIntertwiners {
    std::vector<CMat> U;            // aligned with gbeta.elems
    double hom_residual = 0.0;      // max |U(g)U(h) - U(gh)|
    double unit_residual = 0.0;     // max |U(h) - 1| on the intersection
};

HomomorphicIntertwiners make_homomorphic(const FiniteGroupView& view,
                                         const KernelRepresentation& pi,
                                         const IntertwinerFamily& fam);

}  // namespace ringrep
