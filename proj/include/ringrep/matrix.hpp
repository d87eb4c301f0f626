#pragma once

// Square matrices over Z/p^r: products, inverses, characteristic and minimal
// polynomials, complete linear solving (particular solution plus a kernel
// description that accounts for zero divisors), and trace-form Gram matrices.

#include "ringrep/residue.hpp"

#include <array>
#include <optional>
#include <vector>

namespace ringrep {

constexpr int kMaxN = 6;

/// n x n matrix over Z/p^r with entries stored as canonical lifts.
struct Mat {
    int n = 0;
    i64 mod = 0;
    std::array<i64, kMaxN * kMaxN> a{};

    Mat() = default;
    Mat(int n_, i64 mod_) : n(n_), mod(mod_) { a.fill(0); }

    static Mat identity(int n, i64 mod);
    static Mat from_rows(i64 mod, const std::vector<std::vector<i64>>& rows);

    i64& at(int i, int j) { return a[(size_t)(i * n + j)]; }
    i64 at(int i, int j) const { return a[(size_t)(i * n + j)]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat scaled(i64 c) const;
    Mat transposed() const;
    Mat reduced(i64 new_mod) const;  // entrywise reduction to a divisor modulus
    Mat pow(i64 e) const;

    i64 trace() const;
    i64 det() const;                   // cofactor expansion, exact mod m
    bool is_zero() const;
    bool invertible() const { return det() % smallest_prime_factor() != 0; }
    Mat inverse() const;               // throws NonUnitError if det is not a unit

    Mat bracket(const Mat& o) const { return *this * o - o * *this; }

    /// tr(this * o) mod m.
    i64 trace_form(const Mat& o) const;

    u128 pack() const;
    static Mat unpack(u128 key, int n, i64 mod);

    std::string to_string() const;

private:
    i64 smallest_prime_factor() const;
};

/// Complete solution description of A x = b over Z/p^l.
struct ModSolution {
    std::vector<i64> particular;             // one solution, canonical lifts
    std::vector<std::vector<i64>> kernel;    // generators of the solution kernel
    std::vector<i64> kernel_orders;          // additive order of each generator
    /// Number of solutions = product of kernel_orders.
    u128 count() const;
};

/// Solve A x = b over Z/p^l (A given as rows x cols canonical lifts) with a
/// valuation-pivot diagonalisation, complete even in the presence of zero
/// divisors.  Returns nullopt when the system is inconsistent.
std::optional<ModSolution> solve_modular(const std::vector<std::vector<i64>>& A,
                                         const std::vector<i64>& b, i64 p, int l);

/// Kernel of A over Z/p^l as a list of generators with additive orders.
ModSolution kernel_modular(const std::vector<std::vector<i64>>& A, i64 p, int l);

/// Monic polynomial over F_p, coefficient vector constant-first.
struct PolyOverField {
    i64 p = 3;
    std::vector<i64> c;  // c[i] coefficient of t^i, reduced mod p; empty = zero

    int degree() const { return (int)c.size() - 1; }
    bool operator==(const PolyOverField& o) const { return p == o.p && c == o.c; }
    std::string to_string() const;
};

PolyOverField poly_make(i64 p, std::vector<i64> coeffs);
PolyOverField poly_mul(const PolyOverField& a, const PolyOverField& b);
PolyOverField poly_divmod(const PolyOverField& a, const PolyOverField& b, PolyOverField* rem);
PolyOverField poly_gcd(const PolyOverField& a, const PolyOverField& b);
PolyOverField poly_lcm(const PolyOverField& a, const PolyOverField& b);
bool poly_is_irreducible(const PolyOverField& f);

/// det(t I - M) over Z/mod by cofactor expansion in (Z/mod)[t]; monic.
std::vector<i64> charpoly_mod(const Mat& M);

/// Characteristic and minimal polynomial of a matrix over F_p.
/// The minimal polynomial is the lcm of Krylov annihilators of the standard
/// basis vectors, taken in index order.
std::pair<PolyOverField, PolyOverField> charpoly_minpoly(const Mat& M_mod_p);

/// True iff some vector v makes {v, Mv, ..., M^{n-1} v} a basis; found by
/// exhaustive search over F_p^n.
bool cyclic_vector_test(const Mat& M_mod_p);

/// Gram matrix of the trace form B(X, Y) = tr(XY) on a list of matrices,
/// reduced to Z/p^level.  Returned as rows since the basis can be larger
/// than kMaxN.
std::vector<std::vector<i64>> trace_form_gram(const std::vector<Mat>& basis, i64 p, int level);

/// Determinant of a square integer matrix mod p (Gaussian elimination).
i64 det_mod_p(std::vector<std::vector<i64>> rows, i64 p);

}  // namespace ringrep
