#include "ringrep/hensel.hpp"

#include "ringrep/matrix.hpp"

namespace ringrep {

std::vector<i64> hensel_lift(const std::vector<MultiPoly>& system,
                             const std::vector<i64>& a, i64 p, int l, int r) {
    if (system.empty()) throw std::invalid_argument("hensel_lift: empty system");
    int m = (int)system.size();
    int n = system[0].nvars();
    if ((int)a.size() != n) throw std::invalid_argument("hensel_lift: point arity mismatch");
    if (l < 1 || r < l) throw std::invalid_argument("hensel_lift: need 1 <= l <= r");

    std::vector<i64> x = a;
    for (auto& v : x) v = mod_reduce(v, ipow(p, r));

    for (int i = 0; i < m; ++i)
        if (system[(size_t)i].eval_mod(x, ipow(p, l)) != 0)
            throw NotApproximateZeroError("hensel_lift: F(a) != 0 mod p^l");

    // Jacobian mod p at the starting point must have full row rank m.
    std::vector<std::vector<i64>> jac((size_t)m, std::vector<i64>((size_t)n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            jac[(size_t)i][(size_t)j] = system[(size_t)i].derivative(j).eval_mod(x, p);
    {
        auto ker = kernel_modular(jac, p, 1);
        // row rank = n - dim kernel over F_p
        int kdim = 0;
        for (i64 o : ker.kernel_orders)
            if (o == p) ++kdim;
        if (n - kdim != m)
            throw SingularJacobianError("hensel_lift: Jacobian mod p has row rank < m");
    }

    for (int cur = l; cur < r; ++cur) {
        i64 pcur = ipow(p, cur);
        i64 pnext = ipow(p, cur + 1);
        // residual F(x) mod p^{cur+1} is divisible by p^cur; target its digit
        std::vector<i64> rhs((size_t)m);
        for (int i = 0; i < m; ++i) {
            i64 v = system[(size_t)i].eval_mod(x, pnext);
            if (v % pcur != 0) throw std::logic_error("hensel_lift: lost precision");
            rhs[(size_t)i] = mod_reduce(-(v / pcur), p);
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                jac[(size_t)i][(size_t)j] = system[(size_t)i].derivative(j).eval_mod(x, p);
        auto sol = solve_modular(jac, rhs, p, 1);
        if (!sol) throw SingularJacobianError("hensel_lift: digit equation became inconsistent");
        for (int j = 0; j < n; ++j)
            x[(size_t)j] = mod_reduce(x[(size_t)j] + pcur * sol->particular[(size_t)j], ipow(p, r));
    }

    for (int i = 0; i < m; ++i)
        if (system[(size_t)i].eval_mod(x, ipow(p, r)) != 0)
            throw std::logic_error("hensel_lift: postcondition failed");
    return x;
}

}  // namespace ringrep
