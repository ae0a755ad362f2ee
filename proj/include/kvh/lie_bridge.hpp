#pragma once

#include <optional>
#include <vector>

#include "kvh/kv_complex.hpp"
#include "kvh/kv_core.hpp"

namespace kvh {

// Alternating q-cochain on a Lie algebra with trivial scalar coefficients,
// stored on strictly increasing index tuples.
struct CECochain {
    int q = 0;
    std::map<std::vector<int>, Scalar> entries;  // keys strictly increasing

    bool is_zero() const { return entries.empty(); }
    void add(std::vector<int> idx, Scalar c);            // sorts, tracks sign
    Scalar value(const std::vector<int>& idx) const;     // any order, signed
    friend CECochain operator-(const CECochain& a, const CECochain& b);
};

// Cochain space bookkeeping for the complex C^*(L, F).
class CEComplex {
public:
    explicit CEComplex(const LieAlgebra& l) : l_(&l) {}

    const LieAlgebra& lie() const { return *l_; }
    int dim_cochains(int q) const;  // C(n, q)

    std::vector<std::vector<int>> tuples(int q) const;
    int tuple_rank(const std::vector<int>& t) const;

    // Coboundary with the sign fixed by the chain-side cyclic identity:
    //   (d w)(a_1..a_{q+1}) = sum_{i<j} (-1)^{i+j+1} w([a_i,a_j], ...^i...^j...).
    CECochain coboundary(const CECochain& w) const;

    Matrix coboundary_matrix(int q) const;

    SparseVec flatten(const CECochain& w) const;
    CECochain unflatten(int q, const SparseVec& v) const;

private:
    const LieAlgebra* l_;
};

// Antisymmetrization (Pi theta)(a,b) = (theta(a,b) - theta(b,a)) / 2 of a
// 2-chain with trivial scalar coefficients.
CECochain pi_map(const KVAlgebra& a, const Chain& theta2);

// Checks the identity  cyclic-sum delta_2(theta) = 2 d(Pi theta)  on all
// basis triples; a failure signals an implementation fault.
Verdict cyclic_identity_check(const KVAlgebra& a, const Chain& theta2);

struct ObstructionReport {
    int dim_h2_chain = 0;        // dim H_2(A, F)
    int dim_h2_ce = 0;           // dim H^2(A_L, F)
    Matrix induced_pi;           // matrix of the induced map on homology
    int dim_ker_pi = 0;
    int rank_pi = 0;
    int dim_obstruction = 0;     // dim H^2 - rank
    // quotient bookkeeping used to evaluate classes:
    std::vector<SparseVec> h2_chain_reps;    // cycle representatives in C_2(A,F)
    std::vector<SparseVec> h2_ce_reps;       // cocycle representatives in C^2
    std::vector<SparseVec> ce_coboundaries;  // image of d^1
    std::vector<SparseVec> pi_image_in_h2;   // coordinates of im(Pi) in H^2 basis
};

ObstructionReport obstruction(const KVAlgebra& a);

struct ExtensionResult {
    bool solvable = false;
    Chain phi;                 // 2-chain with delta_2 phi = 0 and 2 Pi phi = omega
    KVAlgebra extended;        // product on F (+) A when solvable
    SparseVec obstruction_class;  // residue of [omega] against im(Pi) when not
};

// Decides whether omega (a CE 2-cocycle) lifts to a KV structure on F (+) A:
// solves delta_2 phi = 0, 2 Pi phi = omega as one linear system.
ExtensionResult kv_extension(const KVAlgebra& a, const CECochain& omega);

}  // namespace kvh
