#pragma once

// Multivariate Hensel lifting: refine an approximate zero of a polynomial
// system one p-adic digit at a time, requiring the Jacobian mod p to have
// full row rank at the starting point.

#include "ringrep/polynomials.hpp"

#include <vector>

namespace ringrep {

struct SingularJacobianError : std::runtime_error {
    explicit SingularJacobianError(const std::string& w) : std::runtime_error(w) {}
};
struct NotApproximateZeroError : std::runtime_error {
    explicit NotApproximateZeroError(const std::string& w) : std::runtime_error(w) {}
};

/// Lift an approximate zero a (F(a) = 0 mod p^l, l >= 1) to precision r:
/// returns alpha with F(alpha) = 0 mod p^r and alpha = a mod p^l.
/// Each step solves  p^{-l} F(a) = -(dF/dx)(a) b  (mod p)  and advances to
/// precision l+1.
std::vector<i64> hensel_lift(const std::vector<MultiPoly>& system,
                             const std::vector<i64>& a, i64 p, int l, int r);

}  // namespace ringrep
