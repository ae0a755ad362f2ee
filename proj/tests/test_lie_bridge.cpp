#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kvh/lie_bridge.hpp"
#include "kvh/rng.hpp"

using namespace kvh;

namespace {

Chain random_2chain(int n, Rng& rng) {
    Chain c;
    c.q = 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar s = rng.small_scalar(2);
            if (!s.is_zero()) c.add({i, j}, {{0, s}});
        }
    return c;
}

CECochain random_cochain(const CEComplex& ce, int q, Rng& rng) {
    CECochain w;
    w.q = q;
    for (auto& t : ce.tuples(q)) w.add(t, rng.small_scalar(2));
    return w;
}

}  // namespace

TEST_CASE("CE coboundary basics") {
    // abelian Lie algebra: d = 0 in all degrees
    LieAlgebra ab = lie_algebra(diagonal_algebra(3));
    CEComplex ce(ab);
    Rng rng(Rng::seed_from_env());
    for (int q = 1; q <= 2; ++q) CHECK(ce.coboundary(random_cochain(ce, q, rng)).is_zero());

    // q=1 single-term formula: d(eta)(a,b) = eta([a,b]) under this engine's
    // sign convention (fixed by the chain-side cyclic identity)
    LieAlgebra l = lie_algebra(e2_algebra());
    CEComplex ce2(l);
    CECochain eta;
    eta.q = 1;
    eta.add({0}, Scalar(1));  // dual of e1
    CECochain d = ce2.coboundary(eta);
    // [e2,e3] = e1, so d(eta)(e2,e3) = 1
    CHECK(d.value({1, 2}) == Scalar(1));

    // d o d = 0 on random cochains
    for (int t = 0; t < 10; ++t) {
        CECochain w = random_cochain(ce2, 1, rng);
        CHECK(ce2.coboundary(ce2.coboundary(w)).is_zero());
        CECochain w2 = random_cochain(ce2, 2, rng);
        CHECK(ce2.coboundary(ce2.coboundary(w2)).is_zero());
    }

    // full antisymmetry of the stored cochains
    CECochain w;
    w.q = 2;
    w.add({2, 1}, Scalar(5));
    CHECK(w.value({1, 2}) == Scalar(-5));
    CHECK(w.value({2, 1}) == Scalar(5));
    CHECK(w.value({1, 1}).is_zero());
}

TEST_CASE("pi map") {
    KVAlgebra a = e2_algebra();
    Rng rng(Rng::seed_from_env());

    // symmetric chains are killed
    Chain sym;
    sym.q = 2;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Scalar s = rng.small_scalar(2);
            sym.add({i, j}, {{0, s}});
            if (i != j) sym.add({j, i}, {{0, s}});
        }
    CHECK(pi_map(a, sym).is_zero());

    // basis dual indicator: Pi(theta) = half the antisymmetrized indicator
    Chain ind;
    ind.q = 2;
    ind.add({0, 1}, {{0, Scalar(1)}});
    CECochain p = pi_map(a, ind);
    CHECK(p.value({0, 1}) == Scalar(1, 2));
    CHECK(p.value({1, 0}) == Scalar(-1, 2));

    // multiplication paired with a linear form: Pi = half form(bracket)
    for (int form = 0; form < 4; ++form) {
        Chain mulform;
        mulform.q = 2;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                for (auto& [k, s] : a.product(i, j))
                    if (k == form) mulform.add({i, j}, {{0, s}});
            }
        CECochain q = pi_map(a, mulform);
        LieAlgebra l = lie_algebra(a);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Scalar br;
                for (auto& [k, s] : l.bracket[i][j])
                    if (k == form) br = s;
                CHECK(q.value({i, j}) == Scalar(1, 2) * br);
            }
    }
}

TEST_CASE("cyclic identity holds for random 2-chains") {
    Rng rng(Rng::seed_from_env());
    for (KVAlgebra a : {e2_algebra(), truncated_poly_algebra(3), upper_triangular_algebra(2)}) {
        Chain zero;
        zero.q = 2;
        CHECK(cyclic_identity_check(a, zero));
        for (int t = 0; t < 10; ++t) CHECK(cyclic_identity_check(a, random_2chain(a.dim(), rng)));
    }
}

TEST_CASE("obstruction report exactness identities") {
    for (KVAlgebra a : {e2_algebra(), diagonal_algebra(3), one_dim_idempotent(),
                        truncated_poly_algebra(3), upper_triangular_algebra(2)}) {
        ObstructionReport rep = obstruction(a);
        CHECK(rep.dim_h2_chain == rep.dim_ker_pi + rep.rank_pi);
        CHECK(rep.dim_obstruction == rep.dim_h2_ce - rep.rank_pi);
        CHECK(rep.dim_ker_pi >= 0);
        CHECK(rep.dim_obstruction >= 0);
    }
    // 1-dim algebra: Lambda^2 = 0 so H^2 = 0 and the obstruction vanishes
    ObstructionReport one = obstruction(one_dim_idempotent());
    CHECK(one.dim_h2_ce == 0);
    CHECK(one.dim_obstruction == 0);

    // abelian associative algebra: the bracket vanishes, every 2-cochain is
    // a cocycle, no coboundaries: H^2 = Lambda^2 A* = C(3,2) = 3
    ObstructionReport ab = obstruction(diagonal_algebra(3));
    CHECK(ab.dim_h2_ce == 3);
}

TEST_CASE("kv_extension") {
    KVAlgebra a = e2_algebra();
    LieAlgebra l = lie_algebra(a);
    CEComplex ce(l);

    // omega = 0: trivial product extension
    CECochain zero;
    zero.q = 2;
    ExtensionResult r0 = kv_extension(a, zero);
    REQUIRE(r0.solvable);
    CHECK(is_kv(r0.extended));
    CHECK(r0.extended.dim() == 5);

    // exact cocycles always extend
    Rng rng(Rng::seed_from_env());
    for (int t = 0; t < 5; ++t) {
        CECochain eta;
        eta.q = 1;
        for (int i = 0; i < a.dim(); ++i) eta.add({i}, rng.small_scalar(2));
        CECochain om = ce.coboundary(eta);
        ExtensionResult r = kv_extension(a, om);
        CHECK(r.solvable);
    }

    // agreement of the two code paths over a full cocycle basis, plus the
    // extension's bracket reproduces omega
    for (KVAlgebra alg : {e2_algebra(), truncated_poly_algebra(3), upper_triangular_algebra(2),
                          diagonal_algebra(2)}) {
        LieAlgebra la = lie_algebra(alg);
        CEComplex cea(la);
        Matrix d2 = cea.coboundary_matrix(2);
        SubspaceBasis cocycles = kernel_basis(d2);
        ObstructionReport ob = obstruction(alg);
        Matrix basis_m = Matrix::from_columns(cea.dim_cochains(2), [&] {
            std::vector<SparseVec> cols = ob.h2_ce_reps;
            cols.insert(cols.end(), ob.ce_coboundaries.begin(), ob.ce_coboundaries.end());
            return cols;
        }());
        Matrix pi_img = Matrix::from_columns(ob.dim_h2_ce, ob.pi_image_in_h2);
        for (auto& v : cocycles.vectors) {
            CECochain om = cea.unflatten(2, v);
            ExtensionResult r = kv_extension(alg, om);
            // independent sigma([omega]) via the obstruction report
            auto coords = solve(basis_m, cea.flatten(om));
            REQUIRE(coords.has_value());
            SparseVec h2c;
            for (auto& [row, s] : *coords)
                if (row < ob.dim_h2_ce) h2c.emplace_back(row, s);
            bool sigma_zero = solve(pi_img, h2c).has_value();
            CHECK(r.solvable == sigma_zero);
            if (r.solvable) {
                // bracket of the extension reproduces omega in the F-slot
                const KVAlgebra& ext = r.extended;
                for (int i = 0; i < alg.dim(); ++i)
                    for (int j = 0; j < alg.dim(); ++j) {
                        SparseVec br = sparse_axpy(ext.product(i + 1, j + 1), Scalar(-1),
                                                   ext.product(j + 1, i + 1));
                        Scalar f_part;
                        for (auto& [k, s] : br)
                            if (k == 0) f_part = s;
                        CHECK(f_part == om.value({i, j}));
                    }
            } else {
                CHECK_FALSE(r.obstruction_class.empty());
            }
        }
    }

    // non-cocycle input is rejected
    CECochain bad;
    bad.q = 2;
    bad.add({0, 1}, Scalar(1));
    LieAlgebra lu = lie_algebra(upper_triangular_algebra(2));
    if (!CEComplex(lu).coboundary(bad).is_zero())
        CHECK_THROWS(kv_extension(upper_triangular_algebra(2), bad));
}

TEST_CASE("obstruction dims cross-checked by dense ranks") {
    // independent dense route: dim H^2 = dim ker d^2 - rank d^1 with plain
    // row reduction, dim H_2 from the homology pipeline already
    // oracle-verified elsewhere
    for (KVAlgebra a : {e2_algebra(), upper_triangular_algebra(2), diagonal_algebra(3)}) {
        LieAlgebra l = lie_algebra(a);
        CEComplex ce(l);
        Matrix d2 = ce.coboundary_matrix(2);
        Matrix d1 = ce.coboundary_matrix(1);
        auto dense_rank_of = [](const Matrix& m) {
            std::vector<std::vector<Scalar>> rows(m.rows(), std::vector<Scalar>(m.cols()));
            for (int c = 0; c < m.cols(); ++c)
                for (auto& [r, s] : m.column(c)) rows[r][c] = s;
            int rank = 0;
            for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
                int pivot = -1;
                for (int r = rank; r < m.rows(); ++r)
                    if (!rows[r][c].is_zero()) {
                        pivot = r;
                        break;
                    }
                if (pivot < 0) continue;
                std::swap(rows[rank], rows[pivot]);
                Scalar inv = Scalar(1) / rows[rank][c];
                for (int k = c; k < m.cols(); ++k) rows[rank][k] *= inv;
                for (int r = 0; r < m.rows(); ++r) {
                    if (r == rank || rows[r][c].is_zero()) continue;
                    Scalar f = rows[r][c];
                    for (int k = c; k < m.cols(); ++k) rows[r][k] -= f * rows[rank][k];
                }
                ++rank;
            }
            return rank;
        };
        int dim_c2 = ce.dim_cochains(2);
        int h2_dense = (dim_c2 - dense_rank_of(d2)) - dense_rank_of(d1);
        ObstructionReport rep = obstruction(a);
        CHECK(rep.dim_h2_ce == h2_dense);
    }
}

TEST_CASE("CE square-zero across the catalog up to degree 3") {
    Rng rng(Rng::seed_from_env());
    for (KVAlgebra a : {e2_algebra(), truncated_poly_algebra(3), truncated_poly_algebra(4),
                        upper_triangular_algebra(2), diagonal_algebra(3), one_dim_idempotent()}) {
        LieAlgebra l = lie_algebra(a);
        CEComplex ce(l);
        for (int q = 1; q <= 3; ++q)
            for (int t = 0; t < 5; ++t) {
                CECochain w;
                w.q = q;
                for (auto& tup : ce.tuples(q)) w.add(tup, rng.small_scalar(2));
                CHECK(ce.coboundary(ce.coboundary(w)).is_zero());
            }
    }
}

TEST_CASE("antisymmetrized chain boundaries are CE coboundaries") {
    // 2 Pi(delta_1 eta) equals the CE coboundary of eta read as a 1-cochain
    Rng rng(Rng::seed_from_env());
    for (KVAlgebra a : {e2_algebra(), upper_triangular_algebra(2), truncated_poly_algebra(3)}) {
        KVModule triv = KVModule::trivial(a.dim(), 1);
        ChainComplex cx(a, triv);
        LieAlgebra l = lie_algebra(a);
        CEComplex ce(l);
        for (int t = 0; t < 10; ++t) {
            Chain eta;
            eta.q = 1;
            CECochain eta_cochain;
            eta_cochain.q = 1;
            for (int i = 0; i < a.dim(); ++i) {
                Scalar s = rng.small_scalar(2);
                if (s.is_zero()) continue;
                eta.add({i}, {{0, s}});
                eta_cochain.add({i}, s);
            }
            CECochain lhs = pi_map(a, cx.boundary(eta));
            // 2 Pi(delta_1 eta) - d(eta) = 0
            CECochain two_lhs;
            two_lhs.q = 2;
            for (auto& [idx, c] : lhs.entries) two_lhs.add(idx, Scalar(2) * c);
            CHECK((two_lhs - ce.coboundary(eta_cochain)).is_zero());
        }
    }
}

TEST_CASE("extensions project onto the base algebra") {
    KVAlgebra a = e2_algebra();
    LieAlgebra l = lie_algebra(a);
    CEComplex ce(l);
    SubspaceBasis cocycles = kernel_basis(ce.coboundary_matrix(2));
    for (auto& v : cocycles.vectors) {
        ExtensionResult r = kv_extension(a, ce.unflatten(2, v));
        if (!r.solvable) continue;
        // forgetting the scalar slot recovers the base products
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                SparseVec proj;
                for (auto& [k, s] : r.extended.product(i + 1, j + 1))
                    if (k >= 1) proj.emplace_back(k - 1, s);
                CHECK(proj == a.product(i, j));
                // the scalar slot is central: u e_i = e_i u = u u = 0
                CHECK(r.extended.product(0, i + 1).empty());
                CHECK(r.extended.product(i + 1, 0).empty());
            }
        CHECK(r.extended.product(0, 0).empty());
    }
}
