#include "kvh/kv_core.hpp"

#include <map>
#include <stdexcept>

namespace kvh {

SparseVec basis_vec(int i) { return {{i, Scalar(1)}}; }

KVAlgebra::KVAlgebra(int dim, FieldTag field) : dim_(dim), field_(field) {
    labels_.resize(dim);
    for (int i = 0; i < dim; ++i) labels_[i] = "e" + std::to_string(i + 1);
    mul_.assign(dim, std::vector<SparseVec>(dim));
}

void KVAlgebra::add_product_term(int i, int j, int k, Scalar c) {
    mul_[i][j] = sparse_normalize(sparse_axpy(mul_[i][j], Scalar(1), {{k, std::move(c)}}));
}

SparseVec KVAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
    std::map<int, Scalar> acc;
    for (auto& [i, xi] : x)
        for (auto& [j, yj] : y) {
            Scalar c = xi * yj;
            for (auto& [k, m] : mul_[i][j]) acc[k] += c * m;
        }
    SparseVec out;
    for (auto& [k, s] : acc)
        if (!s.is_zero()) out.emplace_back(k, s);
    return out;
}

SparseVec KVAlgebra::associator(const SparseVec& a, const SparseVec& b,
                                const SparseVec& c) const {
    SparseVec left = multiply(a, multiply(b, c));
    SparseVec right = multiply(multiply(a, b), c);
    return sparse_axpy(left, Scalar(-1), right);
}

KVModule::KVModule(int dimA, int dimW) : dimA_(dimA), dimW_(dimW) {
    left_.assign(dimA, std::vector<SparseVec>(dimW));
    right_.assign(dimW, std::vector<SparseVec>(dimA));
}

SparseVec KVModule::act_left(const SparseVec& x, const SparseVec& w) const {
    std::map<int, Scalar> acc;
    for (auto& [i, xi] : x)
        for (auto& [a, wa] : w) {
            Scalar c = xi * wa;
            for (auto& [b, m] : left_[i][a]) acc[b] += c * m;
        }
    SparseVec out;
    for (auto& [b, s] : acc)
        if (!s.is_zero()) out.emplace_back(b, s);
    return out;
}

SparseVec KVModule::act_right(const SparseVec& w, const SparseVec& x) const {
    std::map<int, Scalar> acc;
    for (auto& [a, wa] : w)
        for (auto& [i, xi] : x) {
            Scalar c = wa * xi;
            for (auto& [b, m] : right_[a][i]) acc[b] += c * m;
        }
    SparseVec out;
    for (auto& [b, s] : acc)
        if (!s.is_zero()) out.emplace_back(b, s);
    return out;
}

KVModule KVModule::trivial(int dimA, int dimW) { return KVModule(dimA, dimW); }

KVModule KVModule::regular(const KVAlgebra& a) {
    KVModule m(a.dim(), a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            m.set_left(i, j, a.product(i, j));
            m.set_right(i, j, a.product(i, j));
        }
    return m;
}

SparseVec LieAlgebra::apply(const SparseVec& x, const SparseVec& y) const {
    std::map<int, Scalar> acc;
    for (auto& [i, xi] : x)
        for (auto& [j, yj] : y) {
            Scalar c = xi * yj;
            for (auto& [k, m] : bracket[i][j]) acc[k] += c * m;
        }
    SparseVec out;
    for (auto& [k, s] : acc)
        if (!s.is_zero()) out.emplace_back(k, s);
    return out;
}

namespace {
std::string triple_witness(const KVAlgebra& a, int i, int j, int k) {
    return "(" + a.label(i) + "," + a.label(j) + "," + a.label(k) + ")";
}
}  // namespace

Verdict is_kv(const KVAlgebra& a) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SparseVec lhs = a.associator(basis_vec(i), basis_vec(j), basis_vec(k));
                SparseVec rhs = a.associator(basis_vec(j), basis_vec(i), basis_vec(k));
                if (sparse_axpy(lhs, Scalar(-1), rhs) != SparseVec{})
                    return Verdict::fail(triple_witness(a, i, j, k));
            }
    return Verdict::ok();
}

namespace {

SparseVec module_assoc_abw(const KVAlgebra& a, const KVModule& m, const SparseVec& x,
                           const SparseVec& y, const SparseVec& w) {
    // (x,y,w) = x(yw) - (xy)w
    SparseVec lhs = m.act_left(x, m.act_left(y, w));
    SparseVec rhs = m.act_left(a.multiply(x, y), w);
    return sparse_axpy(lhs, Scalar(-1), rhs);
}

SparseVec module_assoc_awb(const KVAlgebra& a, const KVModule& m, const SparseVec& x,
                           const SparseVec& w, const SparseVec& y) {
    // (x,w,y) = x(wy) - (xw)y
    SparseVec lhs = m.act_left(x, m.act_right(w, y));
    SparseVec rhs = m.act_right(m.act_left(x, w), y);
    return sparse_axpy(lhs, Scalar(-1), rhs);
}

SparseVec module_assoc_wab(const KVAlgebra& a, const KVModule& m, const SparseVec& w,
                           const SparseVec& x, const SparseVec& y) {
    // (w,x,y) = w(xy) - (wx)y
    SparseVec lhs = m.act_right(w, a.multiply(x, y));
    SparseVec rhs = m.act_right(m.act_right(w, x), y);
    return sparse_axpy(lhs, Scalar(-1), rhs);
}

}  // namespace

Verdict is_kv_module(const KVAlgebra& a, const KVModule& m) {
    const int n = a.dim();
    const int nw = m.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int w = 0; w < nw; ++w) {
                if (j > i) {
                    SparseVec lhs = module_assoc_abw(a, m, basis_vec(i), basis_vec(j), basis_vec(w));
                    SparseVec rhs = module_assoc_abw(a, m, basis_vec(j), basis_vec(i), basis_vec(w));
                    if (sparse_axpy(lhs, Scalar(-1), rhs) != SparseVec{})
                        return Verdict::fail("(a,b,w) != (b,a,w) at " + triple_witness(a, i, j, 0) +
                                             " w" + std::to_string(w + 1));
                }
                SparseVec lhs = module_assoc_awb(a, m, basis_vec(i), basis_vec(w), basis_vec(j));
                SparseVec rhs = module_assoc_wab(a, m, basis_vec(w), basis_vec(i), basis_vec(j));
                if (sparse_axpy(lhs, Scalar(-1), rhs) != SparseVec{})
                    return Verdict::fail("(a,w,b) != (w,a,b) at " + triple_witness(a, i, j, 0) +
                                         " w" + std::to_string(w + 1));
            }
    return Verdict::ok();
}

LieAlgebra lie_algebra(const KVAlgebra& a) {
    const int n = a.dim();
    LieAlgebra l;
    l.dim = n;
    l.bracket.assign(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            l.bracket[i][j] =
                sparse_normalize(sparse_axpy(a.product(i, j), Scalar(-1), a.product(j, i)));
    Verdict j = jacobi_ok(l);
    if (!j) throw std::domain_error("lie_algebra: Jacobi fails (corrupted algebra): " + j.witness);
    return l;
}

Verdict jacobi_ok(const LieAlgebra& l) {
    const int n = l.dim;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                SparseVec s = l.apply(basis_vec(i), l.apply(basis_vec(j), basis_vec(k)));
                s = sparse_axpy(s, Scalar(1), l.apply(basis_vec(j), l.apply(basis_vec(k), basis_vec(i))));
                s = sparse_axpy(s, Scalar(1), l.apply(basis_vec(k), l.apply(basis_vec(i), basis_vec(j))));
                if (s != SparseVec{})
                    return Verdict::fail("jacobi at (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
    return Verdict::ok();
}

SubspaceBasis j_space(const KVAlgebra& a, const KVModule& m) {
    const int n = a.dim();
    const int nw = m.dim();
    // Rows: one block per (i,j) basis pair, each block dim nw; columns: W.
    Matrix stacked(n * n * nw, nw);
    for (int w = 0; w < nw; ++w) {
        SparseVec col;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                SparseVec v = module_assoc_abw(a, m, basis_vec(i), basis_vec(j), basis_vec(w));
                for (auto& [b, s] : v) col.emplace_back((i * n + j) * nw + b, s);
            }
        stacked.set_column(w, std::move(col));
    }
    return kernel_basis(stacked);
}

KVModule tensor_module(const KVAlgebra& a, const KVModule& v, const KVModule& w) {
    const int n = a.dim();
    const int dv = v.dim(), dw = w.dim();
    KVModule t(n, dv * dw);
    auto idx = [dw](int p, int q) { return p * dw + q; };
    for (int i = 0; i < n; ++i)
        for (int p = 0; p < dv; ++p)
            for (int q = 0; q < dw; ++q) {
                SparseVec lv;
                for (auto& [p2, s] : v.left(i, p)) lv.emplace_back(idx(p2, q), s);
                for (auto& [q2, s] : w.left(i, q)) lv.emplace_back(idx(p, q2), s);
                t.set_left(i, idx(p, q), std::move(lv));
                SparseVec rv;
                for (auto& [q2, s] : w.right(q, i)) rv.emplace_back(idx(p, q2), s);
                t.set_right(idx(p, q), i, std::move(rv));
            }
    return t;
}

namespace {

// Tensor power T^r of a module: left action by the derivation rule, right
// action on the last factor. r = 0 gives the trivial one-dimensional module.
KVModule tensor_power(const KVAlgebra& a, const KVModule& m, int r) {
    if (r == 0) return KVModule::trivial(a.dim(), 1);
    KVModule acc = m;
    for (int k = 1; k < r; ++k) acc = tensor_module(a, acc, m);
    return acc;
}

}  // namespace

KVModule hom_module(const KVAlgebra& a, int r, const KVModule& w, int s, const KVModule& v) {
    if (r < 1 || s < 1) throw std::invalid_argument("hom_module: powers must be >= 1");
    KVModule in = tensor_power(a, w, r);
    KVModule out = tensor_power(a, v, s);
    const int n = a.dim();
    const int di = in.dim(), dd = out.dim();
    KVModule h(n, di * dd);
    auto idx = [dd](int alpha, int beta) { return alpha * dd + beta; };
    // Basis element E_(alpha,beta): input basis alpha -> output basis beta.
    for (int i = 0; i < n; ++i)
        for (int alpha = 0; alpha < di; ++alpha)
            for (int beta = 0; beta < dd; ++beta) {
                // (a E)(x_al') = a (E(x_al')) - E(a x_al')
                //  first part: nonzero only at al' = alpha, out = a . v_beta
                //  second part: E picks coefficient of alpha inside a . x_al'
                SparseVec lv;
                for (auto& [b2, c] : out.left(i, beta)) lv.emplace_back(idx(alpha, b2), c);
                for (int alpha2 = 0; alpha2 < di; ++alpha2) {
                    for (auto& [t, c] : in.left(i, alpha2))
                        if (t == alpha) lv.emplace_back(idx(alpha2, beta), -c);
                }
                h.set_left(i, idx(alpha, beta), std::move(lv));
                // (E a)(x_al') = E(x_al') . a
                SparseVec rv;
                for (auto& [b2, c] : out.right(beta, i)) rv.emplace_back(idx(alpha, b2), c);
                h.set_right(idx(alpha, beta), i, std::move(rv));
            }
    return h;
}

// ---- catalog ---------------------------------------------------------------

KVAlgebra e2_algebra() {
    // Coordinates (x,y,z,t) as basis e1..e4, with product
    //   XX' = ((y-t)z' - tt',  zz' - tx' - t'x - tt',  (y-t)t',  0).
    // The middle component is symmetric in X,X', which the associator
    // symmetry forces for any product of this shape.
    KVAlgebra a(4);
    auto prod = [&](int i, int j) {
        long x = (i == 0), y = (i == 1), z = (i == 2), t = (i == 3);
        long x2 = (j == 0), z2 = (j == 2), t2 = (j == 3);
        SparseVec v;
        long c1 = (y - t) * z2 - t * t2;
        long c2 = z * z2 - t * x2 - t2 * x - t * t2;
        long c3 = (y - t) * t2;
        if (c1) v.emplace_back(0, Scalar(c1));
        if (c2) v.emplace_back(1, Scalar(c2));
        if (c3) v.emplace_back(2, Scalar(c3));
        return v;
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a.set_product(i, j, prod(i, j));
    return a;
}

KVAlgebra broken_fixture() {
    KVAlgebra a(2);
    a.add_product_term(0, 0, 1, Scalar(1));  // e1 e1 = e2
    a.add_product_term(1, 0, 0, Scalar(1));  // e2 e1 = e1
    return a;
}

KVAlgebra zero_algebra(int dim) { return KVAlgebra(dim); }

KVAlgebra one_dim_idempotent() {
    KVAlgebra a(1);
    a.add_product_term(0, 0, 0, Scalar(1));
    return a;
}

KVAlgebra truncated_poly_algebra(int n) {
    KVAlgebra a(n);
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i == 0 ? "1" : "x^" + std::to_string(i);
    a.set_labels(std::move(labels));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) a.add_product_term(i, j, i + j, Scalar(1));
    return a;
}

KVAlgebra upper_triangular_algebra(int n) {
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) basis.emplace_back(i, j);
    KVAlgebra a(static_cast<int>(basis.size()));
    std::vector<std::string> labels;
    for (auto& [i, j] : basis)
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    a.set_labels(std::move(labels));
    auto index_of = [&](int i, int j) {
        for (size_t k = 0; k < basis.size(); ++k)
            if (basis[k] == std::make_pair(i, j)) return static_cast<int>(k);
        return -1;
    };
    for (size_t p = 0; p < basis.size(); ++p)
        for (size_t q = 0; q < basis.size(); ++q) {
            auto [i, j] = basis[p];
            auto [k, l] = basis[q];
            if (j == k) a.add_product_term(static_cast<int>(p), static_cast<int>(q), index_of(i, l), Scalar(1));
        }
    return a;
}

KVAlgebra diagonal_algebra(int n) {
    KVAlgebra a(n);
    for (int i = 0; i < n; ++i) a.add_product_term(i, i, i, Scalar(1));
    return a;
}

}  // namespace kvh
