#include "ringrep/irreps.hpp"

#include <algorithm>
#include <map>

namespace ringrep {

ConjugacyClasses conjugacy_classes(const FiniteGroupView& view) {
    ConjugacyClasses cls;
    size_t n = view.size();
    cls.class_of.assign(n, (u32)n);
    auto gens = view.generators();
    for (u32 seed = 0; seed < (u32)n; ++seed) {
        if (cls.class_of[seed] != (u32)n) continue;
        u32 cid = (u32)cls.reps.size();
        std::vector<u32> orbit{seed};
        cls.class_of[seed] = cid;
        size_t head = 0;
        u32 min_elem = seed;
        while (head < orbit.size()) {
            u32 x = orbit[head++];
            for (u32 g : gens) {
                u32 y = view.conj(g, x);
                if (cls.class_of[y] == (u32)n) {
                    cls.class_of[y] = cid;
                    orbit.push_back(y);
                    min_elem = std::min(min_elem, y);
                }
            }
        }
        cls.reps.push_back(min_elem);
        cls.sizes.push_back((i64)orbit.size());
    }
    return cls;
}

cplx inner_product(const FiniteGroupView& view, const ConjugacyClasses& cls,
                   const ClassFunction& a, const ClassFunction& b) {
    cplx acc = 0.0;
    for (size_t c = 0; c < cls.count(); ++c)
        acc += (double)cls.sizes[c] * a.values[c] * std::conj(b.values[c]);
    return acc / (double)view.size();
}

ClassFunction induced_character(const FiniteGroupView& view, const ConjugacyClasses& cls,
                                const std::vector<u32>& subgroup, const std::vector<cplx>& values) {
    // Ind f(x) = (1/|H|) sum_{g in G} f0(g x g^{-1}); summed per class this is
    // (|G| / (|H| |class|)) * sum over class members inside H of f.
    if (subgroup.size() != values.size())
        throw std::invalid_argument("induced_character: size mismatch");
    ClassFunction out;
    out.values.assign(cls.count(), cplx(0, 0));
    for (size_t t = 0; t < subgroup.size(); ++t)
        out.values[cls.class_of[subgroup[t]]] += values[t];
    double scale = (double)view.size() / (double)subgroup.size();
    for (size_t c = 0; c < cls.count(); ++c) out.values[c] *= scale / (double)cls.sizes[c];
    return out;
}

std::vector<i64> recover_rho(const FiniteGroupView& view, const Mat& beta,
                             const ThetaFamily& fam, size_t theta_index) {
    int r = view.r();
    if (r % 2 == 0 || r < 3) throw std::invalid_argument("recover_rho: need odd r >= 3");
    int l = (r + 1) / 2;
    i64 p = view.p();
    i64 mod = view.mod();
    i64 pl = ipow(p, l);
    i64 plm1 = ipow(p, l - 1);
    i64 inv2 = mod_inv(2, mod);
    int n = view.spec().n;
    const auto& theta = fam.thetas.at(theta_index);

    Mat beta_p = beta.reduced(p);
    CentralizerLie gbf = centralizer_lie(view.lie(), beta_p, 1);

    // lift each basis element of g_beta(F_p) to an exact centralizer Lie
    // element mod p^r: solve the Lie + commutant equations with the mod-p
    // congruence rows appended
    auto lift_central = [&](const Mat& Xbar) {
        std::vector<std::vector<i64>> rows = lie_equations(view.spec(), mod);
        std::vector<i64> rhs(rows.size(), 0);
        Mat b = beta.reduced(mod);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<i64> row((size_t)(n * n), 0);
                for (int k = 0; k < n; ++k) {
                    row[(size_t)(i * n + k)] = mod_reduce(row[(size_t)(i * n + k)] + b.at(k, j), mod);
                    row[(size_t)(k * n + j)] = mod_reduce(row[(size_t)(k * n + j)] - b.at(i, k), mod);
                }
                rows.push_back(std::move(row));
                rhs.push_back(0);
            }
        for (int e = 0; e < n * n; ++e) {
            std::vector<i64> row((size_t)(n * n), 0);
            row[(size_t)e] = ipow(p, r - 1);  // p^{r-1} X = p^{r-1} Xbar fixes X mod p
            rows.push_back(std::move(row));
            rhs.push_back(mod_reduce(ipow(p, r - 1) * Xbar.a[(size_t)e], mod));
        }
        auto sol = solve_modular(rows, rhs, p, r);
        if (!sol) throw IncompatiblePairError("recover_rho: central lift does not exist");
        Mat X(n, mod);
        for (int e = 0; e < n * n; ++e) X.a[(size_t)e] = sol->particular[(size_t)e];
        return X;
    };

    auto rho_value = [&](const Mat& Xbar) -> i64 {
        Mat X = lift_central(Xbar);
        Mat u = Mat::identity(n, mod) + X.scaled(plm1) + (X * X).scaled(mod_mul(inv2, ipow(p, 2 * l - 2), mod));
        int local = fam.centralizer.index_of(u);
        CycScalar tau_part = CycScalar::root(pl, -mod_reduce(X.trace_form(beta), pl));
        CycScalar val = (tau_part * theta.values[(size_t)local]).normalized();
        if (val.modulus() == 1) return 0;
        if (p % val.modulus() != 0)
            throw IncompatiblePairError("recover_rho: value is not a p-th root of unity");
        return mod_reduce(val.exponent() * (p / val.modulus()), p);
    };

    std::vector<i64> rho;
    for (const Mat& Xbar : gbf.basis) rho.push_back(rho_value(Xbar));

    // rho must be additive: check on sums of basis pairs
    for (size_t i = 0; i < gbf.basis.size(); ++i)
        for (size_t j = 0; j < gbf.basis.size(); ++j) {
            Mat sum = gbf.basis[i] + gbf.basis[j];
            if (rho_value(sum) != mod_reduce(rho[i] + rho[j], p))
                throw IncompatiblePairError("recover_rho: recovered rho is not additive");
        }
    return rho;
}

SigmaOdd sigma_odd(const FiniteGroupView& view, const Mat& beta, const ThetaFamily& fam,
                   size_t theta_index, const std::vector<i64>& rho,
                   const KernelRepresentation& pi, const HomomorphicIntertwiners& u_psi) {
    int r = view.r();
    int l = (r + 1) / 2;
    i64 plm1 = ipow(view.p(), l - 1);
    const auto& theta = fam.thetas.at(theta_index);
    (void)rho;

    // compatibility: theta must agree with the homothety character of pi on
    // the intersection G_beta cap K_{l-1}
    for (size_t gi = 0; gi < fam.centralizer.elems.size(); ++gi) {
        const Mat& g = fam.centralizer.elems[gi];
        if (!(g.reduced(plm1) == Mat::identity(g.n, plm1))) continue;
        const MonomialMat& pig = pi.at(view.index_of(g));
        CycScalar scalar;
        if (!pig.is_scalar(&scalar))
            throw IncompatiblePairError("sigma_odd: pi is not a homothety on the intersection");
        if (!(theta.values[gi] == scalar))
            throw IncompatiblePairError("sigma_odd: theta and psi_{beta,rho} disagree on the intersection");
    }

    SigmaOdd sig;
    sig.dim = pi.dim;
    sig.domain = stabilizer_group(view, beta);
    sig.char_values.reserve(sig.domain.size());
    for (u32 x : sig.domain) {
        Mat xm = view.mat(x);
        bool found = false;
        cplx value = 0.0;
        for (size_t gi = 0; gi < fam.centralizer.elems.size(); ++gi) {
            Mat h = fam.centralizer.elems[gi].inverse() * xm;
            if (!(h.reduced(plm1) == Mat::identity(xm.n, plm1))) continue;
            CMat m = cmat_mul(u_psi.U[gi], pi.at(view.index_of(h)).dense(), pi.dim);
            cplx v = theta.values[gi].to_complex() * cmat_trace(m, pi.dim);
            if (!found) {
                value = v;
                found = true;
                sig.g_local.push_back((int)gi);
                sig.h_index.push_back(view.index_of(h));
            } else if (std::abs(v - value) > 1e-6) {
                throw std::logic_error("sigma_odd: character value depends on the factorization");
            }
        }
        if (!found) throw FactorizationMismatchError("sigma_odd: no factorization g h found");
        sig.char_values.push_back(value);
    }
    return sig;
}

FamilyCertificate certify_family(const FiniteGroupView& view, const Mat& beta,
                                 const ConjugacyClasses& cls, u64 seed, double tol) {
    FamilyCertificate cert;
    cert.beta = beta;
    int r = view.r();
    i64 p = view.p();
    LevelSplit split = LevelSplit::of(r);

    auto reg = regularity_report(view.spec(), p, beta);
    cert.applicable = reg.char_eq_min && reg.centralizer_abelian && reg.centralizer_centralizes_lie;
    if (!cert.applicable) {
        cert.failure = "outside theorem hypotheses (charpoly != minpoly or centralizer probes failed)";
        return cert;
    }

    ThetaFamily fam = theta_set(view.spec(), p, r, beta);
    cert.theta_count = fam.thetas.size();

    // smoothness consequence: order formula for the centralizer
    {
        MatGroup cen1 = centralizer_unit_group(view.spec(), p, 1, beta.reduced(p));
        i64 expect = (i64)cen1.elems.size() * ipow(p, (r - 1) * reg.dim_centralizer);
        cert.smooth_order = (i64)fam.centralizer.elems.size() == expect;
    }

    // psi_beta as a subgroup function on K_l
    PsiBeta psi(beta, p, r);
    auto kl = view.kernel_indices(split.l);
    std::vector<cplx> psi_vals;
    psi_vals.reserve(kl.size());
    for (u32 k : kl) psi_vals.push_back(psi.eval(view.mat(k)).to_complex());
    ClassFunction ind_psi = induced_character(view, cls, kl, psi_vals);
    cert.exhaustion_rhs = std::real(inner_product(view, cls, ind_psi, ind_psi));

    std::vector<ClassFunction> chis;
    if (r % 2 == 0) {
        cert.sigma_dim = 1;
        for (size_t t = 0; t < fam.thetas.size(); ++t) {
            SigmaEven sig = sigma_even(view, beta, fam, t);
            std::vector<cplx> vals;
            vals.reserve(sig.values.size());
            for (auto& v : sig.values) vals.push_back(v.to_complex());
            chis.push_back(induced_character(view, cls, sig.domain, vals));
            cert.induced_dim = (i64)((double)view.size() / (double)sig.domain.size());
        }
    } else {
        std::vector<Mat> amb;
        for (const Mat& b : view.lie().basis(1)) amb.push_back(b.reduced(p));
        SymplecticSpace V(p, amb, beta.reduced(p));
        cert.sigma_dim = ipow(p, V.half());
        std::map<std::vector<i64>, std::pair<KernelRepresentation, HomomorphicIntertwiners>> cache;
        for (size_t t = 0; t < fam.thetas.size(); ++t) {
            std::vector<i64> rho = recover_rho(view, beta, fam, t);
            auto it = cache.find(rho);
            if (it == cache.end()) {
                KernelRepresentation pi = pi_beta_rho(view, beta, rho, V);
                IntertwinerFamily ifam = intertwiner_family(view, pi, fam.centralizer, seed);
                HomomorphicIntertwiners u_psi = make_homomorphic(view, pi, ifam);
                it = cache.emplace(rho, std::make_pair(std::move(pi), std::move(u_psi))).first;
            }
            SigmaOdd sig = sigma_odd(view, beta, fam, t, rho, it->second.first, it->second.second);
            chis.push_back(induced_character(view, cls, sig.domain, sig.char_values));
            cert.induced_dim = (i64)cert.sigma_dim * (i64)((double)view.size() / (double)sig.domain.size());
        }
    }

    cert.pass = true;
    for (size_t i = 0; i < chis.size(); ++i) {
        double nrm = std::real(inner_product(view, cls, chis[i], chis[i]));
        cert.norms.push_back(nrm);
        if (std::abs(nrm - 1.0) > tol) {
            cert.pass = false;
            cert.failure = "induced character norm differs from 1";
        }
        for (size_t j = 0; j < i; ++j) {
            double off = std::abs(inner_product(view, cls, chis[i], chis[j]));
            cert.max_off_diagonal = std::max(cert.max_off_diagonal, off);
            if (off > tol) {
                cert.pass = false;
                cert.failure = "induced characters are not orthogonal";
            }
        }
        // restriction back to K_l contains psi_beta
        cplx mult = 0.0;
        for (size_t t = 0; t < kl.size(); ++t)
            mult += chis[i].values[cls.class_of[kl[t]]] * std::conj(psi_vals[t]);
        mult /= (double)kl.size();
        cert.psi_multiplicities.push_back(std::real(mult));
        if (std::real(mult) < 0.5) {
            cert.pass = false;
            cert.failure = "psi_beta does not appear in the restriction";
        }
        cplx ip = inner_product(view, cls, ind_psi, chis[i]);
        cert.exhaustion_lhs += std::norm(ip);
    }
    if (std::abs(cert.exhaustion_lhs - cert.exhaustion_rhs) > tol * (double)chis.size()) {
        cert.pass = false;
        cert.failure = "exhaustion accounting mismatch";
    }
    if (!cert.smooth_order) {
        cert.pass = false;
        cert.failure = "centralizer order formula failed";
    }
    return cert;
}

}  // namespace ringrep
