#pragma once

// Independent brute-force homology oracle, used only by tests. It rebuilds
// the boundary operator by direct evaluation of the defining formula on
// dense argument tuples and computes ranks with a plain dense elimination.
// Deliberately shares no code with the library's boundary/rank pipeline.

#include <vector>

#include "kvh/kv_core.hpp"
#include "kvh/linalg.hpp"

namespace kvh_oracle {

using kvh::KVAlgebra;
using kvh::KVModule;
using kvh::Scalar;
using kvh::SparseVec;

using DenseVec = std::vector<Scalar>;
using DenseMat = std::vector<std::vector<Scalar>>;  // row-major

DenseVec dense_of(const SparseVec& v, int n);

// Evaluate the boundary of the q-chain given densely as
// theta[multi-index-rank][w] on the argument tuple (a_1..a_{q+1}) of basis
// indices; returns the value in W.
DenseVec boundary_value(const KVAlgebra& A, const KVModule& W, int q,
                        const std::vector<DenseVec>& theta,
                        const std::vector<int>& args);

// Dense matrix of boundary : C_q -> C_{q+1}; for q = 0 columns run over the
// provided J(W) basis vectors.
DenseMat boundary_matrix(const KVAlgebra& A, const KVModule& W, int q,
                         const std::vector<DenseVec>& jbasis);

int dense_rank(DenseMat m);

struct OracleDims {
    std::vector<int> dimC;
    std::vector<int> rank_delta;
    std::vector<int> dimH;
};

// Homology dimensions for q = 0..q_max via dense ranks:
// dim H_q = dim C_q - rank(delta_q) - rank(delta_{q-1}).
OracleDims homology_dims(const KVAlgebra& A, const KVModule& W, int q_max);

}  // namespace kvh_oracle
