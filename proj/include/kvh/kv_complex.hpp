#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kvh/kv_core.hpp"
#include "kvh/linalg.hpp"

namespace kvh {

// A q-chain over (A, W), stored sparsely as multi-index -> value vector.
// q = 0 chains are vectors in J(W), stored under the empty multi-index.
struct Chain {
    int q = 0;
    std::map<std::vector<int>, SparseVec> entries;

    bool is_zero() const;
    void add(const std::vector<int>& idx, const SparseVec& v);
    SparseVec value(const std::vector<int>& idx) const;

    Chain& operator+=(const Chain& o);
    Chain scaled(const Scalar& c) const;
    friend Chain operator-(const Chain& a, const Chain& b);
};

// The two readings of the boundary formula's insertion term: A composes the
// insertion first and the right action second, B the other way around. They
// agree on every catalog pair (the right action touches only values), which
// verify_d2 confirms for the selected grouping.
enum class Grouping { A, B };

// The pair (A, W) plus cached basis bookkeeping for C(A, W).
class ChainComplex {
public:
    ChainComplex(const KVAlgebra& a, const KVModule& w, Grouping g = Grouping::A);

    const KVAlgebra& algebra() const { return *a_; }
    const KVModule& module() const { return *w_; }

    int dimA() const { return a_->dim(); }
    int dimW() const { return w_->dim(); }

    // dim C_q; q = 0 gives dim J(W).
    int chain_dim(int q) const;
    const SubspaceBasis& j_basis() const { return j_; }

    // Flat coordinate index of (multi-index, value-basis) inside C_q, with
    // multi-indices ordered lexicographically (first slot most significant).
    int flat_index(const std::vector<int>& idx, int b) const;
    std::vector<int> multi_index_of(int flat, int q, int* b) const;

    SparseVec flatten(const Chain& c) const;
    Chain unflatten(int q, const SparseVec& v) const;

    // Insertion operator e_j(a): C_q -> C_{q-1}; position j is 1-based.
    Chain insertion(int j, const SparseVec& a, const Chain& theta) const;

    // Boundary operator per the complex's defining formula. For q = 0 the
    // chain must lie in J(W).
    Chain boundary(const Chain& theta) const;

    // Matrix of boundary : C_q -> C_{q+1} in the flat bases. For q = 0 the
    // columns run over the J(W) basis.
    Matrix boundary_matrix(int q) const;

    // delta_{q+1} o delta_q = 0 for all q < q_max, checked basis chain by
    // basis chain; returns a witness on failure.
    Verdict verify_d2(int q_max) const;

private:
    const KVAlgebra* a_;
    const KVModule* w_;
    Grouping grouping_;
    SubspaceBasis j_;
};

struct DegreeReport {
    int q = 0;
    int dim_chains = 0;       // dim C_q
    int rank_boundary = 0;    // rank delta_q
    int dim_cycles = 0;       // dim ker delta_q
    int dim_homology = 0;     // dim H_q
    std::vector<SparseVec> representatives;  // cycle representatives mod boundaries
};

struct ComplexReport {
    std::vector<DegreeReport> degrees;
};

// Homology of C(A, W) for q = 0..q_max. Requires delta^2 = 0 (verified).
ComplexReport homology(const KVAlgebra& a, const KVModule& w, int q_max);

// ---- split pairs G = A (+) W and the bigraded refinement -------------------

// A split KV pair: the algebra G has the A-basis first, then the W-basis,
// and W (the ideal part) is also the coefficient module.
struct SplitAlgebra {
    KVAlgebra G;
    int dimA = 0;
    int dimW = 0;
    KVModule W;                     // W as a G-module (ideal actions)
    std::optional<int> unit_w;      // index of the constant 1 inside W, if any

    bool in_A(int g) const { return g < dimA; }
};

struct BigradedEntry {
    int r = 0, s = 0;
    int dim_component = 0;  // dim C_{r,s}
    int dim_cycles = 0;     // ker(delta restricted to C_{r,s})
    int dim_boundaries = 0; // delta(C_{r-1,s} + C_{r,s-1}) cap C_{r,s}
    int dim_homology = 0;
};

// H_{r,s} for all r+s = q per the restricted kernel / intersected boundary
// quotient.
std::vector<BigradedEntry> bigraded_homology(const SplitAlgebra& split, int q);

// Bidegree decomposition of a chain over a split pair.
Chain bigraded_component(const SplitAlgebra& split, const Chain& theta, int r, int s);

struct HomotopyResult {
    Chain eta;          // e_1(1) theta_{q-1,1}
    Chain delta_eta_a;  // boundary of eta restricted to pure-A multi-indices
    Chain theta_q0;     // the (q,0) component of theta
    bool identity_holds = false;  // theta_{q,0} == -delta(eta) on T^q A
};

// The explicit contracting homotopy for (q,0) components of cycles:
// theta_{q,0} = -delta(e_1(1) theta_{q-1,1}). Requires W to carry a unit.
HomotopyResult vanishing_homotopy(const SplitAlgebra& split, const Chain& theta);

}  // namespace kvh
