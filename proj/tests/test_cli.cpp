#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kvh/lie_bridge.hpp"
#include "kvh/report.hpp"

using namespace kvh;

TEST_CASE("session config validation") {
    SessionConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.qmax = 5;
    CHECK_THROWS(cfg.validate());
    cfg.qmax = 3;
    cfg.degree = 6;
    CHECK_THROWS(cfg.validate());
    cfg.degree = 4;
    cfg.lift_mode = "nonsense";
    CHECK_THROWS(cfg.validate());

    Json j = {{"field", "Qi"}, {"qmax", 3}, {"degree", 4}};
    SessionConfig parsed = config_from_json(j);
    CHECK(parsed.field == FieldTag::Qi);
    CHECK(parsed.qmax == 3);
    Json bad = {{"field", "Q"}, {"surprise", 1}};
    CHECK_THROWS(config_from_json(bad));
}

TEST_CASE("algebra JSON round trip") {
    KVAlgebra a = e2_algebra();
    Json j = algebra_json(a);
    KVAlgebra back = algebra_from_json(j);
    CHECK(back.dim() == a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < a.dim(); ++k) CHECK(back.product(i, k) == a.product(i, k));
    CHECK(is_kv(back).pass);

    // an extension's structure constants serialize the same way
    LieAlgebra l = lie_algebra(a);
    CEComplex ce(l);
    CECochain zero;
    zero.q = 2;
    ExtensionResult ext = kv_extension(a, zero);
    REQUIRE(ext.solvable);
    Json ej = algebra_json(ext.extended);
    KVAlgebra eback = algebra_from_json(ej);
    CHECK(eback.dim() == 5);
    CHECK(is_kv(eback).pass);

    // field Q rejects complex scalars
    j["mul"][0][0][0] = "1+1 i";
    CHECK_THROWS(algebra_from_json(j));
}

TEST_CASE("poly and chain JSON") {
    Poly p(2);
    Mono m(2, 0);
    m[0] = 2;
    m[1] = 1;
    p.add_term(m, Scalar(3, 7));
    Json pj = poly_json(p);
    CHECK(poly_from_json(pj, 2) == p);
    CHECK_THROWS(poly_from_json(Json{{"2", "1"}}, 2));

    MultiDiffChain c(2, 2);
    Mono a(2, 0);
    a[0] = 1;
    c.add_term({a, Mono(2, 0)}, p);
    Json cj = chain_json(c);
    MultiDiffChain back = chain_from_json(cj, 2);
    CHECK((back - c).is_zero());
}

TEST_CASE("bivector JSON") {
    Json j = Json::array();
    j.push_back({{"i", 1}, {"j", 2}, {"coeff", Json{{"0,0,1", "1"}}}});
    Bivector p = bivector_from_json(j, 3);
    CHECK(p.component(0, 1) == Poly::variable(3, 2));
    CHECK(p.component(1, 0) == -Poly::variable(3, 2));
}

TEST_CASE("report serialization is deterministic") {
    SessionConfig cfg;
    Json a = provenance_json(cfg);
    Json b = provenance_json(cfg);
    CHECK(a.dump() == b.dump());
    ObstructionReport rep = obstruction(e2_algebra());
    CHECK(obstruction_json(rep).dump() == obstruction_json(rep).dump());
    CHECK(rep.dim_h2_chain == rep.dim_ker_pi + rep.rank_pi);
}
