#include "kvh/lie_bridge.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kvh {

namespace {

// Sort an index tuple, returning the permutation sign; 0 on repeats.
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

void CECochain::add(std::vector<int> idx, Scalar c) {
    if (c.is_zero()) return;
    int sign = sort_sign(idx);
    if (sign == 0) return;
    if (sign < 0) c = -c;
    auto [it, fresh] = entries.try_emplace(std::move(idx), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) entries.erase(it);
    }
}

Scalar CECochain::value(const std::vector<int>& idx) const {
    std::vector<int> key = idx;
    int sign = sort_sign(key);
    if (sign == 0) return Scalar();
    auto it = entries.find(key);
    if (it == entries.end()) return Scalar();
    return sign < 0 ? -it->second : it->second;
}

CECochain operator-(const CECochain& a, const CECochain& b) {
    CECochain out;
    out.q = a.q;
    for (auto& [i, c] : a.entries) out.add(i, c);
    for (auto& [i, c] : b.entries) out.add(i, -c);
    return out;
}

int CEComplex::dim_cochains(int q) const {
    if (q < 0) return 0;
    // binomial(n, q)
    const int n = l_->dim;
    if (q > n) return 0;
    long r = 1;
    for (int k = 0; k < q; ++k) r = r * (n - k) / (k + 1);
    return static_cast<int>(r);
}

std::vector<std::vector<int>> CEComplex::tuples(int q) const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const int n = l_->dim;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == q) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

int CEComplex::tuple_rank(const std::vector<int>& t) const {
    auto all = tuples(static_cast<int>(t.size()));
    auto it = std::find(all.begin(), all.end(), t);
    return static_cast<int>(it - all.begin());
}

CECochain CEComplex::coboundary(const CECochain& w) const {
    const int q = w.q;
    CECochain out;
    out.q = q + 1;
    for (auto& T : tuples(q + 1)) {
        Scalar acc;
        for (int i = 0; i < q + 1; ++i)
            for (int j = i + 1; j < q + 1; ++j) {
                // (-1)^{i+j+1} with 1-based positions = (-1)^{i+j+1} 0-based
                int sign = (((i + 1) + (j + 1) + 1) % 2 == 0) ? 1 : -1;
                std::vector<int> rest;
                for (int k = 0; k < q + 1; ++k)
                    if (k != i && k != j) rest.push_back(T[k]);
                for (auto& [b, c] : l_->bracket[T[i]][T[j]]) {
                    std::vector<int> args;
                    args.push_back(b);
                    args.insert(args.end(), rest.begin(), rest.end());
                    Scalar v = w.value(args);
                    if (!v.is_zero()) acc += Scalar(static_cast<long>(sign)) * c * v;
                }
            }
        if (!acc.is_zero()) out.add(T, acc);
    }
    return out;
}

SparseVec CEComplex::flatten(const CECochain& w) const {
    auto all = tuples(w.q);
    SparseVec out;
    for (size_t r = 0; r < all.size(); ++r) {
        auto it = w.entries.find(all[r]);
        if (it != w.entries.end()) out.emplace_back(static_cast<int>(r), it->second);
    }
    return out;
}

CECochain CEComplex::unflatten(int q, const SparseVec& v) const {
    auto all = tuples(q);
    CECochain w;
    w.q = q;
    for (auto& [r, c] : v) w.add(all[r], c);
    return w;
}

Matrix CEComplex::coboundary_matrix(int q) const {
    Matrix m(dim_cochains(q + 1), dim_cochains(q));
    auto all = tuples(q);
    for (size_t c = 0; c < all.size(); ++c) {
        CECochain w;
        w.q = q;
        w.add(all[c], Scalar(1));
        m.set_column(static_cast<int>(c), flatten(coboundary(w)));
    }
    return m;
}

CECochain pi_map(const KVAlgebra& a, const Chain& theta2) {
    if (theta2.q != 2) throw std::invalid_argument("pi_map: need a 2-chain");
    CECochain out;
    out.q = 2;
    Scalar half(1, 2);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) {
            SparseVec vij = theta2.value({i, j});
            SparseVec vji = theta2.value({j, i});
            Scalar cij = vij.empty() ? Scalar() : vij[0].second;
            Scalar cji = vji.empty() ? Scalar() : vji[0].second;
            out.add({i, j}, half * (cij - cji));
        }
    return out;
}

Verdict cyclic_identity_check(const KVAlgebra& a, const Chain& theta2) {
    KVModule triv = KVModule::trivial(a.dim(), 1);
    ChainComplex cx(a, triv);
    Chain d2 = cx.boundary(theta2);

    LieAlgebra l = lie_algebra(a);
    CEComplex ce(l);
    CECochain dpi = ce.coboundary(pi_map(a, theta2));

    auto scalar_at = [&](const Chain& c, std::vector<int> idx) {
        SparseVec v = c.value(idx);
        return v.empty() ? Scalar() : v[0].second;
    };
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar cyc = scalar_at(d2, {i, j, k}) + scalar_at(d2, {j, k, i}) +
                             scalar_at(d2, {k, i, j});
                Scalar rhs = Scalar(2) * dpi.value({i, j, k});
                if (cyc != rhs)
                    return Verdict::fail("cyclic identity off at (" + a.label(i) + "," + a.label(j) +
                                         "," + a.label(k) + ")");
            }
    return Verdict::ok();
}

ObstructionReport obstruction(const KVAlgebra& a) {
    ObstructionReport rep;
    KVModule triv = KVModule::trivial(a.dim(), 1);

    // Chain side: H_2(A, F).
    ComplexReport h = homology(a, triv, 2);
    rep.dim_h2_chain = h.degrees[2].dim_homology;
    rep.h2_chain_reps = h.degrees[2].representatives;

    // CE side: H^2(A_L, F).
    LieAlgebra l = lie_algebra(a);
    CEComplex ce(l);
    Matrix d2 = ce.coboundary_matrix(2);
    Matrix d1 = ce.coboundary_matrix(1);
    SubspaceBasis cocycles = kernel_basis(d2);
    std::vector<int> ind = independent_columns(d1);
    for (int c : ind) rep.ce_coboundaries.push_back(d1.column(c));
    rep.dim_h2_ce = cocycles.dim() - static_cast<int>(rep.ce_coboundaries.size());
    std::vector<int> picked =
        extend_to_basis(ce.dim_cochains(2), rep.ce_coboundaries, cocycles.vectors);
    for (int k : picked) rep.h2_ce_reps.push_back(cocycles.vectors[k]);

    // Induced map on homology: express [Pi z] in the H^2 representative
    // coordinates modulo coboundaries.
    ChainComplex cx(a, triv);
    Matrix basis_m = Matrix::from_columns(
        ce.dim_cochains(2), [&] {
            std::vector<SparseVec> cols = rep.h2_ce_reps;
            cols.insert(cols.end(), rep.ce_coboundaries.begin(), rep.ce_coboundaries.end());
            return cols;
        }());
    rep.induced_pi = Matrix(rep.dim_h2_ce, rep.dim_h2_chain);
    for (int c = 0; c < rep.dim_h2_chain; ++c) {
        Chain z = cx.unflatten(2, rep.h2_chain_reps[c]);
        CECochain piz = pi_map(a, z);
        auto x = solve(basis_m, ce.flatten(piz));
        if (!x) throw std::domain_error("obstruction: Pi(cycle) not a cocycle class");
        SparseVec col;
        for (auto& [r, s] : *x)
            if (r < rep.dim_h2_ce) col.emplace_back(r, s);
        rep.induced_pi.set_column(c, std::move(col));
        rep.pi_image_in_h2.push_back(rep.induced_pi.column(c));
    }
    rep.rank_pi = rank(rep.induced_pi);
    rep.dim_ker_pi = rep.dim_h2_chain - rep.rank_pi;
    rep.dim_obstruction = rep.dim_h2_ce - rep.rank_pi;
    return rep;
}

ExtensionResult kv_extension(const KVAlgebra& a, const CECochain& omega) {
    LieAlgebra l = lie_algebra(a);
    CEComplex ce(l);
    if (!ce.coboundary(omega).is_zero())
        throw std::invalid_argument("kv_extension: omega is not a cocycle");

    const int n = a.dim();
    KVModule triv = KVModule::trivial(n, 1);
    ChainComplex cx(a, triv);

    // Unknowns: phi(i,j) indexed flat (i*n+j). Equations: delta_2 phi = 0
    // stacked over all basis triples, and phi(i,j) - phi(j,i) = omega(i,j).
    Matrix d2 = cx.boundary_matrix(2);
    const int skew_rows = n * (n - 1) / 2;
    Matrix sys(d2.rows() + skew_rows, n * n);
    for (int c = 0; c < n * n; ++c) {
        SparseVec col = d2.column(c);
        int i = c / n, j = c % n;
        int row = d2.rows();
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (p == i && q == j) col.emplace_back(row, Scalar(1));
                if (p == j && q == i) col.emplace_back(row, Scalar(-1));
                ++row;
            }
        sys.set_column(c, sparse_normalize(std::move(col)));
    }
    SparseVec rhs;
    {
        int row = d2.rows();
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                Scalar w = omega.value({p, q});
                if (!w.is_zero()) rhs.emplace_back(row, w);
                ++row;
            }
    }

    ExtensionResult res;
    auto x = solve(sys, rhs);
    if (x) {
        res.solvable = true;
        res.phi.q = 2;
        for (auto& [flat, s] : *x) res.phi.add({flat / n, flat % n}, {{0, s}});
        // Extended algebra on F (+) A: basis E0 = (1,0), E_{i+1} = e_i;
        // (0,a)(0,b) = (phi(a,b), ab), E0 products vanish.
        KVAlgebra ext(n + 1, a.field());
        std::vector<std::string> labels{"u"};
        for (int i = 0; i < n; ++i) labels.push_back(a.label(i));
        ext.set_labels(std::move(labels));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                SparseVec prod;
                SparseVec phi_v = res.phi.value({i, j});
                if (!phi_v.empty()) prod.emplace_back(0, phi_v[0].second);
                for (auto& [k, s] : a.product(i, j)) prod.emplace_back(k + 1, s);
                ext.set_product(i + 1, j + 1, std::move(prod));
            }
        Verdict kv = is_kv(ext);
        if (!kv) throw std::domain_error("kv_extension: extension failed is_kv: " + kv.witness);
        res.extended = std::move(ext);
        return res;
    }

    // Unsolvable: σ([omega]) as the residue of [omega] against im(Pi) inside
    // a complement of the cocycle space (independent of the solve above).
    ObstructionReport ob = obstruction(a);
    Matrix basis_m = Matrix::from_columns(ce.dim_cochains(2), [&] {
        std::vector<SparseVec> cols = ob.h2_ce_reps;
        cols.insert(cols.end(), ob.ce_coboundaries.begin(), ob.ce_coboundaries.end());
        return cols;
    }());
    auto coords = solve(basis_m, ce.flatten(omega));
    if (!coords) throw std::domain_error("kv_extension: omega not in the cocycle space");
    SparseVec h2_coords;
    for (auto& [r, s] : *coords)
        if (r < ob.dim_h2_ce) h2_coords.emplace_back(r, s);

    // Residue against im(Pi): pick a complement of im(Pi) inside H^2
    // coordinates and read off the complement components.
    std::vector<SparseVec> pi_cols = ob.pi_image_in_h2;
    std::vector<SparseVec> unit_cols;
    for (int i = 0; i < ob.dim_h2_ce; ++i) unit_cols.push_back(basis_vec(i));
    std::vector<int> comp = extend_to_basis(ob.dim_h2_ce, pi_cols, unit_cols);
    std::vector<SparseVec> full = pi_cols;
    for (int k : comp) full.push_back(unit_cols[k]);
    Matrix full_m = Matrix::from_columns(ob.dim_h2_ce, full);
    auto y = solve(full_m, h2_coords);
    if (!y) throw std::domain_error("kv_extension: residue computation failed");
    for (auto& [r, s] : *y)
        if (r >= static_cast<int>(pi_cols.size()))
            res.obstruction_class.emplace_back(r - static_cast<int>(pi_cols.size()), s);
    if (res.obstruction_class.empty())
        throw std::domain_error("kv_extension: inconsistent verdicts (solve failed, residue zero)");
    return res;
}

}  // namespace kvh
