#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kvh/contact.hpp"

using namespace kvh;

TEST_CASE("form calculus basics") {
    // alpha = dz - p dq on (q,p,z); dalpha = dq ^ dp; v = dq ^ dp ^ dz
    ContactGeometry geom(1, 3);
    const int N = 3;
    CHECK(geom.alpha.value({geom.model.z_var()}) == Poly::constant(N, Scalar(1)));
    CHECK(geom.alpha.value({geom.model.q_var(0)}) == -Poly::variable(N, geom.model.p_var(0)));
    CHECK(geom.dalpha.value({geom.model.q_var(0), geom.model.p_var(0)}) ==
          Poly::constant(N, Scalar(1)));
    CHECK(geom.volume.value({0, 1, 2}) == Poly::constant(N, Scalar(1)));

    // d^2 = 0
    CHECK(exterior_d(geom.dalpha).is_zero());

    // beta(sharp(omega)) = omega on all degrees present
    for (const DiffForm* f : {&geom.alpha, &geom.dalpha, &geom.volume}) {
        Multivector mv = sharp(*f, geom.volume);
        DiffForm back = contract_into_volume(mv, geom.volume);
        CHECK((back - *f).is_zero());
    }

    // sharp(v) is the scalar 1; sharp((dalpha)^n) = R
    Multivector one = sharp(geom.volume, geom.volume);
    CHECK(one.degree == 0);
    CHECK(one.value({}) == Poly::constant(N, Scalar(1)));
    Multivector r = geom.pi_family(1);
    CHECK(r.degree == 1);
    CHECK(r.value({geom.model.z_var()}) == Poly::constant(N, Scalar(1)));
    CHECK(r.value({0}).is_zero());
    CHECK(r.value({1}).is_zero());
}

TEST_CASE("sharp of alpha for n=1") {
    ContactGeometry geom(1, 3);
    Multivector p2 = geom.pi_family(0);
    CHECK(p2.degree == 2);
    // #alpha = dq ^ dp-dual part + correction: components against (q,p),(p,z)
    CHECK(p2.value({0, 1}) == Poly::constant(3, Scalar(1)));
    CHECK(p2.value({1, 2}) == -Poly::variable(3, 1));
    CHECK(p2.value({0, 2}).is_zero());
    // round trip
    CHECK((contract_into_volume(p2, geom.volume) - geom.alpha).is_zero());
    // the sharp candidate is not Poisson (its Jacobi defect is the known
    // anomaly), while the transverse tensor is
    Bivector sb(3);
    for (auto& [J, c] : p2.comps) sb.set_component(J[0], J[1], c);
    CHECK_FALSE(jacobi_defect(sb).zero);
    CHECK(jacobi_defect(geom.transverse_poisson()).zero);
}

TEST_CASE("lie derivative of multivectors") {
    ContactGeometry geom(1, 3);
    Multivector p2 = geom.pi_family(0);
    CHECK(lie_derivative(geom.reeb, p2).is_zero());
    // a z-dependent bivector is moved by R
    Multivector moved;
    moved.degree = 2;
    moved.nvars = 3;
    moved.add({0, 1}, Poly::variable(3, 2));
    CHECK_FALSE(lie_derivative(geom.reeb, moved).is_zero());
}

TEST_CASE("invariant chains and the contact suite at n=1") {
    ContactGeometry geom(1, 3);
    ContactChecks checks = contact_cycle_checks(geom);
    CHECK(checks.reeb_kv);
    CHECK(checks.d1_reeb);
    CHECK(checks.d1_alpha_reeb);
    CHECK(checks.d2_pi2_sharp);
    CHECK(checks.d2_pi2_transverse);
    CHECK(checks.jacobi_pi2);
    CHECK_FALSE(checks.jacobi_pi2_sharp);  // the sharp chain is not Poisson
    CHECK(checks.lr_pi2);
    CHECK(checks.transverse_bracket);
    CHECK(checks.z_degenerate);
    CHECK(checks.lr_volume);
    CHECK(checks.pi2_not_exact);
    CHECK(checks.reeb_not_exact);
}

TEST_CASE("equivariance under the sampled contactomorphisms") {
    ContactGeometry geom(1, 3);
    InvariantChain rc = invariant_chain(geom, 0, 1);
    InvariantChain ar = invariant_chain(geom, 1, 1);
    InvariantChain p2 = invariant_chain(geom, 0, 0);

    PolyDiffeo tz = z_translation(geom, Scalar(1, 2));
    PolyDiffeo lin = linear_contacto(geom, Scalar(2));
    PolyDiffeo ident = z_translation(geom, Scalar(0));

    for (const InvariantChain* th : {&rc, &ar, &p2}) {
        CHECK(check_equivariance(geom, *th, ident, 2));
        CHECK(check_equivariance(geom, *th, tz, 2));
        CHECK(check_equivariance(geom, *th, lin, 2));
    }

    // a non-alpha-preserving map is rejected
    PolyDiffeo badmap = linear_contacto(geom, Scalar(2));
    badmap.fwd[geom.model.z_var()] = Scalar(2) * Poly::variable(3, geom.model.z_var());
    badmap.inv[geom.model.z_var()] = Scalar(1, 2) * Poly::variable(3, geom.model.z_var());
    CHECK_FALSE(check_equivariance(geom, rc, badmap, 2));
}

TEST_CASE("n=2 contact identities") {
    ContactGeometry geom(2, 2);
    // volume is constant and nonzero
    std::vector<int> top{0, 1, 2, 3, 4};
    CHECK(geom.volume.value(top).degree() == 0);
    CHECK_FALSE(geom.volume.value(top).is_zero());
    Multivector p2 = geom.pi_family(1);  // sharp(alpha ^ dalpha): a bivector
    CHECK(p2.degree == 2);
    CHECK(lie_derivative(geom.reeb, p2).is_zero());
    CHECK(jacobi_defect(geom.transverse_poisson()).zero);
    // transverse closedness via the boundary blocks route runs in the
    // acceptance suite at n = 1; here only the multivector identities.
}

TEST_CASE("lie derivative with non-constant fields") {
    // X = q d/dp on (q,p,z): [X, d/dq] = -d/dp, so
    // L_X (dq-dz plane) = -(dp ^ dz)-plane
    const int N = 3;
    PolyVectorField x(N, Poly(N));
    x[1] = Poly::variable(N, 0);  // q d/dp
    Multivector t;
    t.degree = 2;
    t.nvars = N;
    t.add({0, 2}, Poly::constant(N, Scalar(1)));  // d/dq ^ d/dz
    Multivector lt = lie_derivative(x, t);
    CHECK(lt.value({1, 2}) == Poly::constant(N, Scalar(-1)));
    CHECK(lt.value({0, 2}).is_zero());
    CHECK(lt.value({0, 1}).is_zero());

    // Euler field: L_E T = X(T) - 2T for a constant bivector T
    PolyVectorField euler(N, Poly(N));
    for (int v = 0; v < N; ++v) euler[v] = Poly::variable(N, v);
    Multivector c2;
    c2.degree = 2;
    c2.nvars = N;
    c2.add({0, 1}, Poly::constant(N, Scalar(5)));
    Multivector le = lie_derivative(euler, c2);
    CHECK(le.value({0, 1}) == Poly::constant(N, Scalar(-10)));

    // invariance of the volume-dual pair under a symplectic-type rotation
    // generator q d/dp - p d/dq applied to dq ^ dp
    PolyVectorField rot(N, Poly(N));
    rot[1] = Poly::variable(N, 0);
    rot[0] = -Poly::variable(N, 1);
    Multivector qp;
    qp.degree = 2;
    qp.nvars = N;
    qp.add({0, 1}, Poly::constant(N, Scalar(1)));
    CHECK(lie_derivative(rot, qp).is_zero());
}
