#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kvh/kv_core.hpp"
#include "kvh/rng.hpp"

using namespace kvh;

TEST_CASE("associator on the 4-dim catalog algebra") {
    KVAlgebra a = e2_algebra();
    // e4*e4 = -e1-e2-e3 and (e4,e4,e4) = e1+e3, worked out by hand from the
    // defining product formula.
    CHECK(a.multiply(basis_vec(3), basis_vec(3)) ==
          SparseVec{{0, Scalar(-1)}, {1, Scalar(-1)}, {2, Scalar(-1)}});
    CHECK(a.associator(basis_vec(3), basis_vec(3), basis_vec(3)) ==
          SparseVec{{0, Scalar(1)}, {2, Scalar(1)}});
    // the algebra is KV but genuinely non-associative
    CHECK_FALSE(a.associator(basis_vec(3), basis_vec(3), basis_vec(3)).empty());

    // any associative algebra has zero associator
    KVAlgebra t = truncated_poly_algebra(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                CHECK(t.associator(basis_vec(i), basis_vec(j), basis_vec(k)).empty());

    KVAlgebra z = zero_algebra(3);
    CHECK(z.associator(basis_vec(0), basis_vec(1), basis_vec(2)).empty());
}

TEST_CASE("is_kv over the catalog") {
    CHECK(is_kv(e2_algebra()));
    CHECK(is_kv(truncated_poly_algebra(3)));
    CHECK(is_kv(upper_triangular_algebra(2)));
    CHECK(is_kv(upper_triangular_algebra(3)));
    CHECK(is_kv(diagonal_algebra(3)));
    CHECK(is_kv(zero_algebra(2)));
    CHECK(is_kv(one_dim_idempotent()));

    Verdict v = is_kv(broken_fixture());
    CHECK_FALSE(v);
    CHECK(v.witness == "(e1,e2,e1)");
}

TEST_CASE("is_kv_module") {
    KVAlgebra a = e2_algebra();
    CHECK(is_kv_module(a, KVModule::regular(a)));
    CHECK(is_kv_module(a, KVModule::trivial(a.dim(), 3)));

    // left = multiplication with zero right action still satisfies both
    // identities (the mixed ones degenerate), so it is a module
    KVModule leftonly(a.dim(), a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) leftonly.set_left(i, j, a.product(i, j));
    CHECK(is_kv_module(a, leftonly));

    // a random left action is not
    Rng rng(Rng::seed_from_env());
    KVModule randomleft(a.dim(), 2);
    for (int i = 0; i < a.dim(); ++i)
        for (int w = 0; w < 2; ++w)
            randomleft.set_left(i, w, {{static_cast<int>(rng.below(2)), rng.small_scalar(2)},
                                       {static_cast<int>(rng.below(2)), Scalar(1)}});
    CHECK_FALSE(is_kv_module(a, randomleft));
}

TEST_CASE("lie algebra of a KV algebra") {
    KVAlgebra a = e2_algebra();
    LieAlgebra l = lie_algebra(a);
    // [e2,e3] = e2 e3 - e3 e2 = e1
    CHECK(l.apply(basis_vec(1), basis_vec(2)) == SparseVec{{0, Scalar(1)}});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            SparseVec anti = sparse_axpy(l.apply(basis_vec(i), basis_vec(j)), Scalar(1),
                                         l.apply(basis_vec(j), basis_vec(i)));
            CHECK(anti.empty());
        }

    LieAlgebra ab = lie_algebra(diagonal_algebra(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(ab.apply(basis_vec(i), basis_vec(j)).empty());
    LieAlgebra z = lie_algebra(zero_algebra(2));
    CHECK(z.apply(basis_vec(0), basis_vec(1)).empty());
}

TEST_CASE("j_space") {
    KVAlgebra a = e2_algebra();
    CHECK(j_space(a, KVModule::trivial(a.dim(), 5)).dim() == 5);
    KVAlgebra t = truncated_poly_algebra(3);
    CHECK(j_space(t, KVModule::regular(t)).dim() == 3);
    // j_space vectors annihilate every basis associator
    KVModule reg = KVModule::regular(a);
    SubspaceBasis j = j_space(a, reg);
    for (auto& w : j.vectors)
        for (int i = 0; i < a.dim(); ++i)
            for (int k = 0; k < a.dim(); ++k) {
                SparseVec lhs = reg.act_left(basis_vec(i), reg.act_left(basis_vec(k), w));
                SparseVec rhs = reg.act_left(a.multiply(basis_vec(i), basis_vec(k)), w);
                CHECK(sparse_axpy(lhs, Scalar(-1), rhs).empty());
            }
}

TEST_CASE("tensor and hom modules keep the module axioms") {
    KVAlgebra a = e2_algebra();
    KVModule triv1 = KVModule::trivial(a.dim(), 1);
    KVModule triv2 = KVModule::trivial(a.dim(), 2);
    KVModule t = tensor_module(a, triv1, triv2);
    CHECK(t.dim() == 2);
    CHECK(is_kv_module(a, t));
    for (int i = 0; i < a.dim(); ++i)
        for (int w = 0; w < 2; ++w) {
            CHECK(t.left(i, w).empty());
            CHECK(t.right(w, i).empty());
        }

    KVModule reg = KVModule::regular(a);
    KVModule aa = tensor_module(a, reg, reg);
    CHECK(aa.dim() == 16);
    CHECK(is_kv_module(a, aa));

    KVModule h = hom_module(a, 1, reg, 1, reg);
    CHECK(h.dim() == 16);
    CHECK(is_kv_module(a, h));

    // a . id = 0: the identity map theta(xi)=xi has (a theta)(xi) = a xi - a xi.
    SparseVec id_vec;
    for (int w = 0; w < a.dim(); ++w) id_vec.emplace_back(w * a.dim() + w, Scalar(1));
    for (int i = 0; i < a.dim(); ++i) CHECK(h.act_left(basis_vec(i), id_vec).empty());

    KVModule htriv = hom_module(a, 1, triv2, 1, triv2);
    CHECK(is_kv_module(a, htriv));
    for (int i = 0; i < a.dim(); ++i)
        for (int w = 0; w < htriv.dim(); ++w) CHECK(htriv.left(i, w).empty());
}

TEST_CASE("random perturbation of structure constants breaks is_kv") {
    // The KV identity is a quadratic variety; generic perturbations leave it.
    Rng rng(Rng::seed_from_env());
    int broken = 0;
    for (int trial = 0; trial < 10; ++trial) {
        KVAlgebra a = e2_algebra();
        int i = static_cast<int>(rng.below(4));
        int j = static_cast<int>(rng.below(4));
        int k = static_cast<int>(rng.below(4));
        a.add_product_term(i, j, k, Scalar(1 + static_cast<long>(rng.below(3))));
        if (!is_kv(a)) ++broken;
    }
    CHECK(broken >= 7);
}

TEST_CASE("hom_module rejects zero powers") {
    KVAlgebra a = e2_algebra();
    KVModule reg = KVModule::regular(a);
    CHECK_THROWS(hom_module(a, 0, reg, 1, reg));
    CHECK_THROWS(hom_module(a, 1, reg, 0, reg));
}
