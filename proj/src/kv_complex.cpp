#include "kvh/kv_complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace kvh {

bool Chain::is_zero() const {
    for (auto& [i, v] : entries)
        if (!v.empty()) return false;
    return true;
}

void Chain::add(const std::vector<int>& idx, const SparseVec& v) {
    if (v.empty()) return;
    auto [it, fresh] = entries.try_emplace(idx, v);
    if (!fresh) {
        it->second = sparse_axpy(it->second, Scalar(1), v);
        if (it->second.empty()) entries.erase(it);
    }
}

SparseVec Chain::value(const std::vector<int>& idx) const {
    auto it = entries.find(idx);
    return it == entries.end() ? SparseVec{} : it->second;
}

Chain& Chain::operator+=(const Chain& o) {
    for (auto& [i, v] : o.entries) add(i, v);
    return *this;
}

Chain Chain::scaled(const Scalar& c) const {
    Chain out;
    out.q = q;
    if (c.is_zero()) return out;
    for (auto& [i, v] : entries) {
        SparseVec s;
        s.reserve(v.size());
        for (auto& [b, x] : v) s.emplace_back(b, c * x);
        out.entries[i] = std::move(s);
    }
    return out;
}

Chain operator-(const Chain& a, const Chain& b) {
    Chain out = a;
    out += b.scaled(Scalar(-1));
    return out;
}

ChainComplex::ChainComplex(const KVAlgebra& a, const KVModule& w, Grouping g)
    : a_(&a), w_(&w), grouping_(g) {
    j_ = j_space(a, w);
}

int ChainComplex::chain_dim(int q) const {
    if (q < 0) return 0;
    if (q == 0) return j_.dim();
    int d = dimW();
    for (int k = 0; k < q; ++k) d *= dimA();
    return d;
}

int ChainComplex::flat_index(const std::vector<int>& idx, int b) const {
    int f = 0;
    for (int i : idx) f = f * dimA() + i;
    return f * dimW() + b;
}

std::vector<int> ChainComplex::multi_index_of(int flat, int q, int* b) const {
    *b = flat % dimW();
    int rest = flat / dimW();
    std::vector<int> idx(q);
    for (int k = q - 1; k >= 0; --k) {
        idx[k] = rest % dimA();
        rest /= dimA();
    }
    return idx;
}

SparseVec ChainComplex::flatten(const Chain& c) const {
    SparseVec out;
    for (auto& [idx, v] : c.entries)
        for (auto& [b, s] : v) out.emplace_back(flat_index(idx, b), s);
    return sparse_normalize(std::move(out));
}

Chain ChainComplex::unflatten(int q, const SparseVec& v) const {
    Chain c;
    c.q = q;
    for (auto& [flat, s] : v) {
        int b;
        std::vector<int> idx = multi_index_of(flat, q, &b);
        c.add(idx, {{b, s}});
    }
    return c;
}

Chain ChainComplex::insertion(int j, const SparseVec& a, const Chain& theta) const {
    if (theta.q < 1) throw std::invalid_argument("insertion: need q >= 1");
    if (j < 1 || j > theta.q) throw std::invalid_argument("insertion: position out of range");
    Chain out;
    out.q = theta.q - 1;
    for (auto& [idx, val] : theta.entries) {
        // theta(x_1..x_{j-1}, a, x_j..x_{q-1}): entry matches when idx[j-1]
        // carries a component of `a`.
        Scalar c;
        for (auto& [g, s] : a)
            if (g == idx[j - 1]) c = s;
        if (c.is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(idx.size() - 1);
        for (size_t k = 0; k < idx.size(); ++k)
            if (static_cast<int>(k) != j - 1) rest.push_back(idx[k]);
        SparseVec scaled;
        scaled.reserve(val.size());
        for (auto& [b, s] : val) scaled.emplace_back(b, c * s);
        out.add(rest, scaled);
    }
    return out;
}

Chain ChainComplex::boundary(const Chain& theta) const {
    const int n = dimA();
    Chain out;
    out.q = theta.q + 1;

    if (theta.q == 0) {
        // delta_0(w)(a) = -aw + wa, defined for w in J(W).
        SparseVec w = theta.value({});
        if (!w.empty()) {
            Matrix jm = Matrix::from_columns(dimW(), j_.vectors);
            if (j_.dim() == 0 ? true : !solve(jm, w))
                throw std::invalid_argument("boundary: 0-chain not in J(W)");
        }
        for (int g = 0; g < n; ++g) {
            SparseVec v = sparse_axpy(w_->act_right(w, basis_vec(g)), Scalar(-1),
                                      w_->act_left(basis_vec(g), w));
            out.add({g}, v);
        }
        return out;
    }

    const int q = theta.q;
    for (auto& [idx, val] : theta.entries) {
        for (int j = 1; j <= q; ++j) {
            Scalar sign((j % 2) ? -1L : 1L);

            // Hom-module left action, value part: a_j . theta(rest) where the
            // output arguments are idx with a_j inserted at position j.
            for (int g = 0; g < n; ++g) {
                SparseVec acted = w_->act_left(basis_vec(g), val);
                if (acted.empty()) continue;
                std::vector<int> K(idx);
                K.insert(K.begin() + (j - 1), g);
                SparseVec scaled;
                for (auto& [b, s] : acted) scaled.emplace_back(b, sign * s);
                out.add(K, scaled);
            }

            // Tensor action on arguments: -theta(..., a_j a_i, ...). The
            // output index replaces slot r of idx by x and inserts g at j,
            // for every product  e_g e_x  with a component on e_{idx[r]}.
            for (int r = 0; r < q; ++r) {
                for (int g = 0; g < n; ++g)
                    for (int x = 0; x < n; ++x) {
                        Scalar c;
                        for (auto& [t, s] : a_->product(g, x))
                            if (t == idx[r]) c = s;
                        if (c.is_zero()) continue;
                        std::vector<int> R(idx);
                        R[r] = x;
                        R.insert(R.begin() + (j - 1), g);
                        SparseVec scaled;
                        for (auto& [b, s] : val) scaled.emplace_back(b, -(sign * c) * s);
                        out.add(R, scaled);
                    }
            }

            // The insertion term. Grouping A reads (e_q(a_j) theta) . a_{q+1}
            // (insert, then act on the value); grouping B reads
            // e_q(a_j)(theta . a_{q+1}) (act on the chain's values, then
            // insert). Both contribute when the inserted argument equals the
            // entry's last slot; the final output argument runs over the
            // basis.
            {
                std::vector<int> head(idx.begin(), idx.end() - 1);
                int inserted = idx.back();
                std::vector<int> K(head);
                K.insert(K.begin() + (j - 1), inserted);
                for (int g = 0; g < n; ++g) {
                    SparseVec acted;
                    if (grouping_ == Grouping::A) {
                        acted = w_->act_right(val, basis_vec(g));
                    } else {
                        // materialize (theta . a_g) on this entry first
                        Chain acted_chain;
                        acted_chain.q = q;
                        acted_chain.add(idx, w_->act_right(val, basis_vec(g)));
                        acted = acted_chain.value(idx);
                    }
                    if (acted.empty()) continue;
                    std::vector<int> full(K);
                    full.push_back(g);
                    SparseVec scaled;
                    for (auto& [b, s] : acted) scaled.emplace_back(b, sign * s);
                    out.add(full, scaled);
                }
            }
        }
    }
    return out;
}

Matrix ChainComplex::boundary_matrix(int q) const {
    const int rows = chain_dim(q + 1);
    const int cols = chain_dim(q);
    Matrix m(rows, cols);
    if (q == 0) {
        for (int c = 0; c < j_.dim(); ++c) {
            Chain ch;
            ch.q = 0;
            ch.add({}, j_.vectors[c]);
            m.set_column(c, flatten(boundary(ch)));
        }
        return m;
    }
    for (int c = 0; c < cols; ++c) {
        int b;
        std::vector<int> idx = multi_index_of(c, q, &b);
        Chain ch;
        ch.q = q;
        ch.add(idx, basis_vec(b));
        m.set_column(c, flatten(boundary(ch)));
    }
    return m;
}

Verdict ChainComplex::verify_d2(int q_max) const {
    for (int q = 0; q < q_max; ++q) {
        const int cols = chain_dim(q);
        for (int c = 0; c < cols; ++c) {
            Chain ch;
            ch.q = q;
            if (q == 0) {
                ch.add({}, j_.vectors[c]);
            } else {
                int b;
                std::vector<int> idx = multi_index_of(c, q, &b);
                ch.add(idx, basis_vec(b));
            }
            Chain dd = boundary(boundary(ch));
            if (!dd.is_zero())
                return Verdict::fail("delta^2 != 0 at q=" + std::to_string(q) + ", basis chain " +
                                     std::to_string(c));
        }
    }
    return Verdict::ok();
}

ComplexReport homology(const KVAlgebra& a, const KVModule& w, int q_max) {
    ChainComplex cx(a, w);
    Verdict d2 = cx.verify_d2(q_max + 1);
    if (!d2) throw std::domain_error("homology: " + d2.witness);

    ComplexReport report;
    Matrix prev;  // boundary matrix of degree q-1
    for (int q = 0; q <= q_max; ++q) {
        Matrix bq = cx.boundary_matrix(q);
        DegreeReport dr;
        dr.q = q;
        dr.dim_chains = cx.chain_dim(q);
        dr.rank_boundary = rank(bq);
        SubspaceBasis cycles = kernel_basis(bq);
        dr.dim_cycles = cycles.dim();
        if (q == 0) {
            dr.dim_homology = cycles.dim();
            dr.representatives = cycles.vectors;
        } else {
            std::vector<int> ind = independent_columns(prev);
            std::vector<SparseVec> bimage;
            for (int c : ind) bimage.push_back(prev.column(c));
            dr.dim_homology = dr.dim_cycles - static_cast<int>(bimage.size());
            std::vector<int> picked = extend_to_basis(cx.chain_dim(q), bimage, cycles.vectors);
            for (int k : picked) dr.representatives.push_back(cycles.vectors[k]);
        }
        report.degrees.push_back(std::move(dr));
        prev = std::move(bq);
    }
    return report;
}

// ---- bigraded pieces -------------------------------------------------------

namespace {

// Bidegree of a basis multi-index: r = #A-slots, s = #W-slots.
std::pair<int, int> bidegree_of(const SplitAlgebra& split, const std::vector<int>& idx) {
    int r = 0, s = 0;
    for (int g : idx) (split.in_A(g) ? r : s)++;
    return {r, s};
}

}  // namespace

Chain bigraded_component(const SplitAlgebra& split, const Chain& theta, int r, int s) {
    Chain out;
    out.q = theta.q;
    for (auto& [idx, v] : theta.entries) {
        auto [rr, ss] = bidegree_of(split, idx);
        if (rr == r && ss == s) out.add(idx, v);
    }
    return out;
}

std::vector<BigradedEntry> bigraded_homology(const SplitAlgebra& split, int q) {
    if (q < 1) throw std::invalid_argument("bigraded_homology: q >= 1 required");
    ChainComplex cx(split.G, split.W);

    // Enumerate flat column indices of C_q by bidegree.
    const int cols = cx.chain_dim(q);
    std::vector<std::pair<int, int>> bidx(cols);
    for (int c = 0; c < cols; ++c) {
        int b;
        auto idx = cx.multi_index_of(c, q, &b);
        bidx[c] = bidegree_of(split, idx);
    }

    Matrix dq = cx.boundary_matrix(q);
    Matrix dprev = cx.boundary_matrix(q - 1);

    std::vector<BigradedEntry> table;
    for (int r = 0; r + 0 <= q; ++r) {
        int s = q - r;
        BigradedEntry e;
        e.r = r;
        e.s = s;

        std::vector<int> cols_rs;
        for (int c = 0; c < cols; ++c)
            if (bidx[c] == std::make_pair(r, s)) cols_rs.push_back(c);
        e.dim_component = static_cast<int>(cols_rs.size());

        // Kernel of the full boundary restricted to C_{r,s}.
        std::vector<SparseVec> sub;
        for (int c : cols_rs) sub.push_back(dq.column(c));
        Matrix restricted = Matrix::from_columns(cx.chain_dim(q + 1), sub);
        SubspaceBasis ker_rs = kernel_basis(restricted);
        e.dim_cycles = ker_rs.dim();

        // Boundaries from C_{r-1,s} + C_{r,s-1}, intersected with C_{r,s}.
        std::vector<int> src_cols;
        if (q - 1 == 0) {
            // C_0 = J(W) sits in bidegree (0,0); it maps into C_{1,0}+C_{0,1}.
            if ((r == 1 && s == 0) || (r == 0 && s == 1))
                for (int c = 0; c < cx.chain_dim(0); ++c) src_cols.push_back(c);
        } else {
            const int pcols = cx.chain_dim(q - 1);
            for (int c = 0; c < pcols; ++c) {
                int b;
                auto idx = cx.multi_index_of(c, q - 1, &b);
                auto bd = bidegree_of(split, idx);
                if (bd == std::make_pair(r - 1, s) || bd == std::make_pair(r, s - 1))
                    src_cols.push_back(c);
            }
        }
        // Vectors delta(x), x in the allowed sources, whose components away
        // from C_{r,s} vanish: kernel of the off-projection.
        std::vector<bool> in_rs(cols, false);
        for (int c : cols_rs) in_rs[c] = true;
        std::vector<SparseVec> img_cols, off_cols;
        for (int c : src_cols) {
            const SparseVec& full = dprev.column(c);
            SparseVec off;
            for (auto& [rrow, sv] : full)
                if (!in_rs[rrow]) off.emplace_back(rrow, sv);
            img_cols.push_back(full);
            off_cols.push_back(std::move(off));
        }
        Matrix off = Matrix::from_columns(cols, off_cols);
        SubspaceBasis lift = kernel_basis(off);
        std::vector<SparseVec> inter;
        Matrix img = Matrix::from_columns(cols, img_cols);
        for (auto& k : lift.vectors) {
            SparseVec v = img.apply(k);
            if (!v.empty()) inter.push_back(v);
        }
        Matrix inter_m = Matrix::from_columns(cols, inter);
        e.dim_boundaries = rank(inter_m);
        e.dim_homology = e.dim_cycles - e.dim_boundaries;
        table.push_back(e);
    }
    return table;
}

HomotopyResult vanishing_homotopy(const SplitAlgebra& split, const Chain& theta) {
    if (!split.unit_w) throw std::invalid_argument("vanishing_homotopy: module has no unit");
    const int q = theta.q;
    if (q < 1) throw std::invalid_argument("vanishing_homotopy: need q >= 1");
    const int unit_flat = split.dimA + *split.unit_w;

    HomotopyResult res;
    res.theta_q0 = bigraded_component(split, theta, q, 0);

    // eta := e_1(1) theta_{q-1,1}: pick entries whose first slot is the unit
    // and whose remaining slots are pure A.
    res.eta.q = q - 1;
    for (auto& [idx, v] : theta.entries) {
        if (idx[0] != unit_flat) continue;
        bool pureA = true;
        for (size_t k = 1; k < idx.size(); ++k)
            if (!split.in_A(idx[k])) pureA = false;
        if (!pureA) continue;
        std::vector<int> rest(idx.begin() + 1, idx.end());
        res.eta.add(rest, v);
    }

    ChainComplex cx(split.G, split.W);
    Chain delta_eta = cx.boundary(res.eta);
    res.delta_eta_a.q = q;
    for (auto& [idx, v] : delta_eta.entries) {
        bool pureA = true;
        for (int g : idx)
            if (!split.in_A(g)) pureA = false;
        if (pureA) res.delta_eta_a.add(idx, v);
    }

    Chain sum = res.theta_q0;
    sum += res.delta_eta_a;
    res.identity_holds = sum.is_zero();
    return res;
}

}  // namespace kvh
