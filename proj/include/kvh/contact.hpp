#pragma once

#include <map>
#include <string>
#include <vector>

#include "kvh/models.hpp"
#include "kvh/multidiff.hpp"
#include "kvh/poisson.hpp"

namespace kvh {

// Polynomial-coefficient exterior objects over n variables, indexed by
// strictly increasing tuples.
struct DiffForm {
    int degree = 0;
    int nvars = 0;
    std::map<std::vector<int>, Poly> comps;

    bool is_zero() const;
    void add(std::vector<int> idx, const Poly& c);  // sorts with sign
    Poly value(const std::vector<int>& idx) const;
    friend DiffForm operator+(const DiffForm& a, const DiffForm& b);
    friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
};

struct Multivector {
    int degree = 0;
    int nvars = 0;
    std::map<std::vector<int>, Poly> comps;

    bool is_zero() const;
    void add(std::vector<int> idx, const Poly& c);
    Poly value(const std::vector<int>& idx) const;

    // <df_1 ^ ... ^ df_r, this> = sum_J this^J det[d f_a / d x_{J_b}].
    Poly pair_with_differentials(const std::vector<Poly>& fs) const;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm exterior_d(const DiffForm& a);
// L_X of a multivector: (L_X T)^{i...} = X(T^{i...}) - sum_k T^{..a..} d_a X^{i_k}.
Multivector lie_derivative(const PolyVectorField& x, const Multivector& t);

// Contraction beta(xi) = i(xi) v against a top-degree form v, and its inverse.
DiffForm contract_into_volume(const Multivector& xi, const DiffForm& vol);
Multivector sharp(const DiffForm& omega, const DiffForm& vol);

// The standard contact model data on F^{2n+1}.
struct ContactGeometry {
    ContactModel model;
    DiffForm alpha;        // dz - sum p_i dq_i
    DiffForm dalpha;
    DiffForm volume;       // alpha ^ (dalpha)^n
    PolyVectorField reeb;  // d/dz

    explicit ContactGeometry(int n, int d);

    // sharp(alpha ^ (dalpha)^m); m = n gives sharp((dalpha)^n),
    // proportional to the Reeb field.
    Multivector pi_family(int m) const;

    // the Poisson tensor of the transverse symplectic form dalpha (the
    // z-flat lift sum dq_i ^ dp_i)
    Bivector transverse_poisson() const;
};

// Invariant chain alpha^l (x) Pi_m: l algebra slots paired against alpha,
// 2(n-m) (or 1, for m = n) function slots contracted with the multivector.
struct InvariantChain {
    int ell = 0;
    int m = 0;
    Multivector pi;
    int arity_A() const { return ell; }
    int arity_W() const { return pi.degree; }

    // evaluate on general sections: fields enter through the alpha pairing.
    Poly eval(const ContactGeometry& geom, const std::vector<PolyVectorField>& fields,
              const std::vector<Poly>& funcs) const;
};

InvariantChain invariant_chain(const ContactGeometry& geom, int ell, int m);

struct ContactChecks {
    Verdict reeb_kv;              // the Reeb product is KV on monomial sections
    Verdict d1_reeb;              // boundary of the R-chain vanishes
    Verdict d1_alpha_reeb;        // boundary of alpha (x) R vanishes
    Verdict d2_pi2_sharp;         // boundary of sharp(alpha ^ (dalpha)^{n-1})
    Verdict d2_pi2_transverse;    // boundary of the transverse tensor chain
    Verdict jacobi_pi2;           // transverse tensor Jacobi
    Verdict jacobi_pi2_sharp;     // the sharp chain's Jacobi (reported)
    Verdict lr_pi2;               // L_R Pi_2 = 0 (both candidates)
    Verdict transverse_bracket;   // {q_i,p_j} matches the dalpha bracket
    Verdict z_degenerate;         // transverse tensor kills z-only functions
    Verdict lr_volume;            // L_R v = 0
    Verdict pi2_not_exact;        // Pi_2 not in im(delta_1), truncated complex
    Verdict reeb_not_exact;       // R-chain not in im(delta_0), truncated complex
    bool all_gating() const {
        return reeb_kv.pass && d1_reeb.pass && d1_alpha_reeb.pass && d2_pi2_sharp.pass &&
               d2_pi2_transverse.pass && jacobi_pi2.pass && lr_pi2.pass &&
               transverse_bracket.pass && z_degenerate.pass && lr_volume.pass &&
               pi2_not_exact.pass && reeb_not_exact.pass;
    }
};

ContactChecks contact_cycle_checks(const ContactGeometry& geom);

// Polynomial diffeomorphism given by coordinate images, with inverse.
struct PolyDiffeo {
    std::vector<Poly> fwd;
    std::vector<Poly> inv;
};

PolyDiffeo z_translation(const ContactGeometry& geom, const Scalar& c);
// diag(a on q, 1/a on p, 1 on z): alpha-preserving linear map.
PolyDiffeo linear_contacto(const ContactGeometry& geom, const Scalar& a);

// phi* alpha = alpha, inverse exactness, and the chain equivariance identity
// phi*(theta(xi...)) = theta(phi~(xi)...) on monomial sections.
Verdict check_equivariance(const ContactGeometry& geom, const InvariantChain& theta,
                           const PolyDiffeo& phi, int max_degree);

}  // namespace kvh
