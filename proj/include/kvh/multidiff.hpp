#pragma once

#include <functional>
#include <map>
#include <vector>

#include "kvh/poly.hpp"

namespace kvh {

// Derivative multi-indices, one per argument slot.
using JetKey = std::vector<Mono>;

// Multidifferential operator of arity q with polynomial coefficients:
//   theta(f_1..f_q) = sum_terms  c(x) * prod_i  d^{alpha_i} f_i.
// The symbolic composition operations below keep every identity check
// quantifier-free: a chain is zero iff all stored coefficients are.
class MultiDiffChain {
public:
    MultiDiffChain() : arity_(0), nvars_(0) {}
    MultiDiffChain(int arity, int nvars) : arity_(arity), nvars_(nvars) {}

    int arity() const { return arity_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<JetKey, Poly>& terms() const { return terms_; }

    void add_term(const JetKey& key, const Poly& coeff);

    Poly eval(const std::vector<Poly>& args) const;

    MultiDiffChain operator-() const { return scaled(Scalar(-1)); }
    MultiDiffChain scaled(const Scalar& c) const;
    MultiDiffChain& operator+=(const MultiDiffChain& o);
    friend MultiDiffChain operator+(MultiDiffChain a, const MultiDiffChain& b) { return a += b; }
    friend MultiDiffChain operator-(MultiDiffChain a, const MultiDiffChain& b) {
        return a += b.scaled(Scalar(-1));
    }

    // result(a_0..a_{r-1}) = this(a_{p[0]}, ..., a_{p[r-1]}).
    MultiDiffChain permuted(const std::vector<int>& p) const;
    // arity-2 convenience: theta^T(f,g) = theta(g,f).
    MultiDiffChain transpose() const { return permuted({1, 0}); }

    // ---- jet structure ----
    // jet type of a term: (|alpha_1|, ..., |alpha_q|)
    static std::vector<int> jet_type(const JetKey& k);
    std::map<std::vector<int>, MultiDiffChain> jet_decompose() const;
    MultiDiffChain jet_component(const std::vector<int>& I) const;
    int order() const;                      // max single-slot derivative order
    MultiDiffChain symbol() const;          // component of type (k,...,k)
    bool is_homogeneous() const;            // all components share one degree |I|

    // ---- symbolic compositions (all exact) ----
    // (f, args...) with the new undifferentiated slot at `pos`:
    //   result(..., f, ...) = f * this(other args).
    MultiDiffChain insert_mult_slot(int pos) const;
    // result(args..., h) = this(args...) * h.
    MultiDiffChain right_mult_slot() const;
    // result(..., f, g, ...) = this(..., f*g, ...): slot expands into two.
    MultiDiffChain expand_product_slot(int slot) const;
    // this with inner's value plugged into `slot`; arity grows by
    // inner.arity() - 1.
    MultiDiffChain plug(int slot, const MultiDiffChain& inner) const;
    // result(args) = this(..., a(S) arg_slot, ...) for the vertical/Reeb
    // field with components S over the directions `dirs`.
    MultiDiffChain anchor_into_slot(int slot, const std::vector<Poly>& S,
                                    const std::vector<int>& dirs) const;
    // result(args) = a(S) . this(args).
    MultiDiffChain anchor_on_value(const std::vector<Poly>& S,
                                   const std::vector<int>& dirs) const;

private:
    int arity_, nvars_;
    std::map<JetKey, Poly> terms_;
};

// Total degree |I| of a jet type.
inline int chain_degree(const std::vector<int>& jet_type) {
    int d = 0;
    for (int x : jet_type) d += x;
    return d;
}

// Componentwise multi-index helpers.
bool mono_leq(const Mono& a, const Mono& b);
Mono mono_add(const Mono& a, const Mono& b);
Mono mono_sub(const Mono& a, const Mono& b);
// prod_v binom(a_v, b_v) for b <= a.
Scalar mono_binomial(const Mono& a, const Mono& b);
// All splits of beta into `parts` multi-indices with multinomial weights.
void mono_splits(const Mono& beta, int parts,
                 const std::function<void(const std::vector<Mono>&, const Scalar&)>& emit);

}  // namespace kvh
