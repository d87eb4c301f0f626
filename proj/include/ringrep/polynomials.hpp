#pragma once

// Multivariate integer polynomials, just enough for polynomial systems fed to
// the Hensel lifter: evaluation mod p^r, formal partial derivatives, and a
// small parser for univariate expressions like "x^2-7".

#include "ringrep/residue.hpp"

#include <map>
#include <vector>

namespace ringrep {

/// Polynomial in n variables with integer coefficients; monomials keyed by
/// exponent vectors.
class MultiPoly {
public:
    explicit MultiPoly(int nvars = 1) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, i64 c);
    static MultiPoly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    MultiPoly& add_term(std::vector<int> exps, i64 coeff);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;

    MultiPoly derivative(int var) const;
    i64 eval_mod(const std::vector<i64>& x, i64 mod) const;

    bool empty() const { return terms_.empty(); }
    std::string to_string() const;

private:
    int nvars_;
    std::map<std::vector<int>, i64> terms_;
};

/// Parse a univariate polynomial in the variable "x" with integer
/// coefficients, e.g. "x^2-7" or "2x^3+x-1".
MultiPoly parse_univariate(const std::string& text);

}  // namespace ringrep
