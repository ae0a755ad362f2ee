#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kvh/kv_core.hpp"
#include "kvh/linalg.hpp"
#include "kvh/rng.hpp"

using namespace kvh;

namespace {

Matrix dense(std::vector<std::vector<long>> rows) {
    Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c]) m.set(static_cast<int>(r), static_cast<int>(c), Scalar(rows[r][c]));
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic and parsing") {
    Scalar half(1, 2);
    Scalar third(1, 3);
    CHECK((half + third).str() == "5/6");
    CHECK((half * third).str() == "1/6");
    CHECK((half - half).is_zero());
    CHECK(Scalar::parse("5/6") == half + third);
    CHECK(Scalar::parse("-7") == Scalar(-7));
    Scalar z = Scalar(1, 2) + Scalar(0, 1) * Scalar::i() * Scalar(3, 4);
    CHECK(z.str() == "1/2");
    Scalar zi(mpq_class(1, 2), mpq_class(-3, 4));
    CHECK(zi.str() == "1/2-3/4 i");
    CHECK(Scalar::parse("1/2-3/4 i") == zi);
    CHECK(Scalar::parse("1/2 + 3/4 i") == Scalar(mpq_class(1, 2), mpq_class(3, 4)));
    CHECK((zi / zi).is_one());
    CHECK_THROWS(Scalar::parse("1/2+1/3 i", FieldTag::Q));
    CHECK_THROWS(Scalar::parse("1/0"));
}

TEST_CASE("rank basics") {
    CHECK(rank(Matrix::identity(3)) == 3);
    CHECK(rank(Matrix(2, 2)) == 0);
    CHECK(rank(dense({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(Matrix::identity(4)).dim() == 0);
    CHECK(kernel_basis(Matrix(2, 3)).dim() == 3);
    SubspaceBasis k = kernel_basis(dense({{1, 2}, {2, 4}}));
    REQUIRE(k.dim() == 1);
    // normalized to primitive with positive leading entry: (2, -1)
    CHECK(k.vectors[0] == SparseVec{{0, Scalar(2)}, {1, Scalar(-1)}});
}

TEST_CASE("solve") {
    Matrix id = Matrix::identity(3);
    SparseVec b{{0, Scalar(2)}, {2, Scalar(-5)}};
    auto x = solve(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix zero(2, 2);
    CHECK_FALSE(solve(zero, {{0, Scalar(1)}}).has_value());

    Matrix m = dense({{1, 2}, {2, 4}});
    auto y = solve(m, {{0, Scalar(1)}, {1, Scalar(2)}});
    REQUIRE(y.has_value());
    CHECK(m.apply(*y) == SparseVec{{0, Scalar(1)}, {1, Scalar(2)}});
    CHECK_FALSE(solve(m, {{0, Scalar(1)}, {1, Scalar(3)}}).has_value());
}

TEST_CASE("quotient dim") {
    SubspaceBasis cycles{3, {basis_vec(0), basis_vec(1), basis_vec(2)}};
    SubspaceBasis boundaries{3, {basis_vec(1)}};
    CHECK(quotient_dim(cycles, boundaries) == 2);
    CHECK(quotient_dim(cycles, cycles) == 0);
    SubspaceBasis small{3, {basis_vec(0)}};
    SubspaceBasis outside{3, {basis_vec(2)}};
    CHECK_THROWS(quotient_dim(small, outside));
}

TEST_CASE("rank-nullity and transpose rank on random sparse matrices") {
    Rng rng(Rng::seed_from_env());
    for (int trial = 0; trial < 25; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(7));
        int cols = 1 + static_cast<int>(rng.below(7));
        Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng.below(3) == 0) m.set(r, c, rng.small_scalar());
        int rk = rank(m);
        CHECK(rk == rank(m.transpose()));
        SubspaceBasis ker = kernel_basis(m);
        CHECK(cols == rk + ker.dim());
        for (auto& v : ker.vectors) CHECK(m.apply(v).empty());

        // solve consistency: m*x = m*(random vector) always solvable
        SparseVec x0;
        for (int c = 0; c < cols; ++c) {
            Scalar s = rng.small_scalar();
            if (!s.is_zero()) x0.emplace_back(c, s);
        }
        SparseVec b = m.apply(x0);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
    }
}

TEST_CASE("gaussian rational elimination") {
    Matrix m(2, 2);
    m.set(0, 0, Scalar::i());
    m.set(0, 1, Scalar(1));
    m.set(1, 0, Scalar(-1));
    m.set(1, 1, Scalar::i());
    // rows are i*(row2): rank 1
    CHECK(rank(m) == 1);
    SubspaceBasis k = kernel_basis(m);
    REQUIRE(k.dim() == 1);
    CHECK(m.apply(k.vectors[0]).empty());
}

TEST_CASE("solve failure certifies a rank jump") {
    Rng rng(Rng::seed_from_env());
    for (int t = 0; t < 10; ++t) {
        int rows = 2 + static_cast<int>(rng.below(4));
        int cols = 1 + static_cast<int>(rng.below(4));
        Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng.below(2) == 0) m.set(r, c, rng.small_scalar());
        SparseVec b;
        for (int r = 0; r < rows; ++r) {
            Scalar s = rng.small_scalar();
            if (!s.is_zero()) b.emplace_back(r, s);
        }
        auto x = solve(m, b);
        Matrix aug(rows, cols + 1);
        for (int c = 0; c < cols; ++c)
            for (auto& [r, s] : m.column(c)) aug.set(r, c, s);
        for (auto& [r, s] : b) aug.set(r, cols, s);
        if (x) {
            CHECK(m.apply(*x) == sparse_normalize(b));
            CHECK(rank(aug) == rank(m));
        } else {
            CHECK(rank(aug) == rank(m) + 1);
        }
    }
}
