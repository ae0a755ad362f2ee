#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kvh/linalg.hpp"
#include "kvh/scalar.hpp"

namespace kvh {

// Outcome of an axiom scan: pass/fail plus the first failing witness.
struct Verdict {
    bool pass = true;
    std::string witness;

    static Verdict ok() { return {}; }
    static Verdict fail(std::string w) { return {false, std::move(w)}; }
    explicit operator bool() const { return pass; }
};

// Finite-dimensional algebra given by structure constants:
// e_i * e_j = sum_k mul[i][j][k] e_k.
class KVAlgebra {
public:
    KVAlgebra() = default;
    KVAlgebra(int dim, FieldTag field = FieldTag::Q);

    int dim() const { return dim_; }
    FieldTag field() const { return field_; }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }
    const std::string& label(int i) const { return labels_[i]; }

    void set_product(int i, int j, SparseVec v) { mul_[i][j] = sparse_normalize(std::move(v)); }
    void add_product_term(int i, int j, int k, Scalar c);
    const SparseVec& product(int i, int j) const { return mul_[i][j]; }

    // x*y for coordinate vectors.
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;

    // a(bc) - (ab)c on coordinate vectors.
    SparseVec associator(const SparseVec& a, const SparseVec& b, const SparseVec& c) const;

private:
    int dim_ = 0;
    FieldTag field_ = FieldTag::Q;
    std::vector<std::string> labels_;
    std::vector<std::vector<SparseVec>> mul_;
};

// Two-sided action tensors for a module W over a KVAlgebra.
class KVModule {
public:
    KVModule() = default;
    KVModule(int dimA, int dimW);

    int dim() const { return dimW_; }
    int dimA() const { return dimA_; }

    void set_left(int i, int a, SparseVec v) { left_[i][a] = sparse_normalize(std::move(v)); }
    void set_right(int a, int i, SparseVec v) { right_[a][i] = sparse_normalize(std::move(v)); }
    const SparseVec& left(int i, int a) const { return left_[i][a]; }
    const SparseVec& right(int a, int i) const { return right_[a][i]; }

    SparseVec act_left(const SparseVec& x, const SparseVec& w) const;
    SparseVec act_right(const SparseVec& w, const SparseVec& x) const;

    static KVModule trivial(int dimA, int dimW);
    // A acting on itself by multiplication.
    static KVModule regular(const KVAlgebra& a);

private:
    int dimA_ = 0, dimW_ = 0;
    std::vector<std::vector<SparseVec>> left_;   // [i][a] -> W
    std::vector<std::vector<SparseVec>> right_;  // [a][i] -> W
};

struct LieAlgebra {
    int dim = 0;
    std::vector<std::vector<SparseVec>> bracket;  // [i][j] -> coordinates of [e_i,e_j]

    SparseVec apply(const SparseVec& x, const SparseVec& y) const;
};

SparseVec basis_vec(int i);

// Associator symmetry in the first two arguments, scanned over basis triples.
Verdict is_kv(const KVAlgebra& a);

// The two module identities (a,b,w) = (b,a,w) and (a,w,b) = (w,a,b).
Verdict is_kv_module(const KVAlgebra& a, const KVModule& w);

// [a,b] = ab - ba; antisymmetry is structural, the Jacobi identity is
// asserted and a failure reported (it signals corrupted input).
LieAlgebra lie_algebra(const KVAlgebra& a);

Verdict jacobi_ok(const LieAlgebra& l);

// J(W) = { w : (a,b,w) = 0 for all a,b }, computed as the kernel of the
// stacked associator matrix.
SubspaceBasis j_space(const KVAlgebra& a, const KVModule& w);

// V (x) W with a(v(x)w) = av(x)w + v(x)aw and (v(x)w)a = v(x)wa.
KVModule tensor_module(const KVAlgebra& a, const KVModule& v, const KVModule& w);

// Hom(T^r W, T^s V) with (a th)(xi) = a(th(xi)) - th(a xi), (th a)(xi) = th(xi)a.
KVModule hom_module(const KVAlgebra& a, int r, const KVModule& w, int s, const KVModule& v);

// ---- instance catalog ----------------------------------------------------

// The 4-dimensional algebra with product
//   XX' = ((y+t)z' - tt', zz' - t(x'+t'), (y-t)t', 0).
KVAlgebra e2_algebra();

// Deliberately non-KV: e1*e1 = e2, e2*e1 = e1, all else zero.
KVAlgebra broken_fixture();

KVAlgebra zero_algebra(int dim);
KVAlgebra one_dim_idempotent();                   // e*e = e
KVAlgebra truncated_poly_algebra(int n);          // F[x]/(x^n), basis 1..x^(n-1)
KVAlgebra upper_triangular_algebra(int n);        // upper triangular n x n matrices
KVAlgebra diagonal_algebra(int n);                // F^n componentwise

}  // namespace kvh
