#pragma once

// A fully enumerated finite matrix group G(Z/p^r) with element indexing,
// subgroup masks (congruence kernels, centralizers, stabilizers), and the
// regularity probes used by the representation-building layers.

#include "ringrep/group_spec.hpp"

#include <unordered_map>
#include <vector>

namespace ringrep {

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& w) : std::runtime_error(w) {}
};

struct PackedHash {
    size_t operator()(u128 key) const {
        u64 lo = (u64)key, hi = (u64)(key >> 64);
        u64 x = lo ^ (hi * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL);
        x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27; x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return (size_t)x;
    }
};

using u32 = std::uint32_t;

class FiniteGroupView {
public:
    /// Enumerate G(Z/p^r).  Strategy: direct filtering over all matrices when
    /// p^{r n^2} is small, otherwise enumerate the level-1 group and lift one
    /// fibre representative per layer, filling fibres with the congruence
    /// kernel coset.  Throws BudgetExceededError when |G| would exceed budget.
    FiniteGroupView(const GroupSpec& spec, i64 p, int r, i64 budget = 1000000);

    const GroupSpec& spec() const { return spec_; }
    i64 p() const { return p_; }
    int r() const { return r_; }
    i64 mod() const { return mod_; }
    const LieLattice& lie() const { return lie_; }

    size_t size() const { return elems_.size(); }
    u32 identity() const { return id_; }

    Mat mat(u32 i) const { return Mat::unpack(elems_[i], spec_.n, mod_); }
    u32 index_of(const Mat& m) const;
    bool contains(const Mat& m) const;

    u32 mul(u32 a, u32 b) const;
    u32 inv(u32 a) const { return invtab_[a]; }
    u32 conj(u32 g, u32 x) const { return mul(mul(g, x), invtab_[g]); }
    i64 order_of(u32 a) const;

    /// A small generating set (greedy closure, deterministic).
    const std::vector<u32>& generators() const;

    /// Indices of the kernel of reduction to level l (1 <= l <= r; l = r
    /// gives the trivial subgroup).
    std::vector<u32> kernel_indices(int level) const;

    /// Indices of elements commuting with beta mod p^level.
    std::vector<u32> centralizer_indices(const Mat& beta, int level) const;

    /// Reduction of element i to level l, as a packed matrix.
    u128 reduced_key(u32 i, int level) const;

private:
    GroupSpec spec_;
    i64 p_;
    int r_;
    i64 mod_;
    LieLattice lie_;
    std::vector<u128> elems_;  // sorted packed canonical matrices
    std::unordered_map<u128, u32, PackedHash> index_;
    std::vector<u32> invtab_;
    u32 id_ = 0;
    mutable std::vector<u32> gens_;

    void finalize(std::vector<u128>&& keys);
};

/// Complete solution basis of [X, beta] = 0 inside g(Z/p^level), plus the
/// dimension of the level-1 kernel.
struct CentralizerLie {
    std::vector<Mat> basis;     // free basis of the level solution set
    int dim = 0;                // dimension (= basis size)
};
CentralizerLie centralizer_lie(const LieLattice& lie, const Mat& beta, int level);

struct RegularityReport {
    bool smoothly_regular = false;          // dim g_beta(F_p) == rank
    bool char_eq_min = false;               // charpoly = minpoly mod p
    bool centralizer_abelian = false;       // G_beta(F_p) commutative
    bool centralizer_centralizes_lie = false;  // Ad(g) fixes g_beta(F_p) pointwise
    int dim_centralizer = 0;
};

/// Probes on the reduction of beta mod p.  Needs only the level-1 group.
RegularityReport regularity_report(const GroupSpec& spec, i64 p, const Mat& beta);

/// Named beta presets.
Mat beta_preset(const std::string& name, const GroupSpec& spec, i64 p, int r);

}  // namespace ringrep
