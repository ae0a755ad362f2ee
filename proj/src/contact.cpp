#include "kvh/contact.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kvh {

namespace {

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

bool DiffForm::is_zero() const {
    for (auto& [i, c] : comps)
        if (!c.is_zero()) return false;
    return true;
}

void DiffForm::add(std::vector<int> idx, const Poly& c) {
    if (c.is_zero()) return;
    int sign = sort_sign(idx);
    if (sign == 0) return;
    Poly v = sign < 0 ? -c : c;
    auto [it, fresh] = comps.try_emplace(std::move(idx), v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) comps.erase(it);
    }
}

Poly DiffForm::value(const std::vector<int>& idx) const {
    std::vector<int> key = idx;
    int sign = sort_sign(key);
    if (sign == 0) return Poly(nvars);
    auto it = comps.find(key);
    if (it == comps.end()) return Poly(nvars);
    return sign < 0 ? -it->second : it->second;
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
    DiffForm out = a;
    for (auto& [i, c] : b.comps) out.add(i, c);
    return out;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) {
    DiffForm out = a;
    for (auto& [i, c] : b.comps) out.add(i, -c);
    return out;
}

bool Multivector::is_zero() const {
    for (auto& [i, c] : comps)
        if (!c.is_zero()) return false;
    return true;
}

void Multivector::add(std::vector<int> idx, const Poly& c) {
    if (c.is_zero()) return;
    int sign = sort_sign(idx);
    if (sign == 0) return;
    Poly v = sign < 0 ? -c : c;
    auto [it, fresh] = comps.try_emplace(std::move(idx), v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) comps.erase(it);
    }
}

Poly Multivector::value(const std::vector<int>& idx) const {
    std::vector<int> key = idx;
    int sign = sort_sign(key);
    if (sign == 0) return Poly(nvars);
    auto it = comps.find(key);
    if (it == comps.end()) return Poly(nvars);
    return sign < 0 ? -it->second : it->second;
}

Poly Multivector::pair_with_differentials(const std::vector<Poly>& fs) const {
    if (static_cast<int>(fs.size()) != degree)
        throw std::invalid_argument("pair_with_differentials: arity mismatch");
    Poly out(nvars);
    for (auto& [J, c] : comps) {
        // det [ d f_a / d x_{J_b} ]
        const int r = degree;
        std::vector<int> perm(r);
        for (int i = 0; i < r; ++i) perm[i] = i;
        Poly det(nvars);
        std::function<void(int, int, Poly)> rec = [&](int row, int sign, Poly acc) {
            if (row == r) {
                det += sign < 0 ? -acc : acc;
                return;
            }
            for (int k = row; k < r; ++k) {
                std::swap(perm[row], perm[k]);
                Poly d = fs[row].derivative(J[perm[row]]);
                if (!d.is_zero()) rec(row + 1, k == row ? sign : -sign, acc * d);
                std::swap(perm[row], perm[k]);
            }
        };
        rec(0, 1, Poly::constant(nvars, Scalar(1)));
        out += c * det;
    }
    return out;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    DiffForm out;
    out.degree = a.degree + b.degree;
    out.nvars = a.nvars;
    for (auto& [i, c] : a.comps)
        for (auto& [j, d] : b.comps) {
            std::vector<int> idx = i;
            idx.insert(idx.end(), j.begin(), j.end());
            out.add(idx, c * d);
        }
    return out;
}

DiffForm exterior_d(const DiffForm& a) {
    DiffForm out;
    out.degree = a.degree + 1;
    out.nvars = a.nvars;
    for (auto& [i, c] : a.comps)
        for (int v = 0; v < a.nvars; ++v) {
            Poly dc = c.derivative(v);
            if (dc.is_zero()) continue;
            std::vector<int> idx;
            idx.push_back(v);
            idx.insert(idx.end(), i.begin(), i.end());
            out.add(idx, dc);
        }
    return out;
}

Multivector lie_derivative(const PolyVectorField& x, const Multivector& t) {
    Multivector out;
    out.degree = t.degree;
    out.nvars = t.nvars;
    for (auto& [J, c] : t.comps) {
        // X(c) on the same indices
        Poly xc(t.nvars);
        for (int v = 0; v < t.nvars; ++v) xc += x[v] * c.derivative(v);
        out.add(J, xc);
        // - sum over slots: [X, d_{J_k}] = -(d_{J_k} X^a) d_a, so replace
        //   J_k by a with coefficient -c * d_{J_k} X^a
        for (size_t k = 0; k < J.size(); ++k)
            for (int a = 0; a < t.nvars; ++a) {
                Poly d = x[a].derivative(J[k]);
                if (d.is_zero()) continue;
                std::vector<int> idx = J;
                idx[k] = a;
                out.add(idx, -(c * d));
            }
    }
    return out;
}

DiffForm contract_into_volume(const Multivector& xi, const DiffForm& vol) {
    const int N = vol.nvars;
    if (vol.degree != N) throw std::invalid_argument("contract_into_volume: need a top form");
    std::vector<int> top(N);
    for (int i = 0; i < N; ++i) top[i] = i;
    Poly V = vol.value(top);

    DiffForm out;
    out.degree = N - xi.degree;
    out.nvars = N;
    for (auto& [J, c] : xi.comps) {
        // i(d_{J_1} ^ ... ^ d_{J_r}) v = V * sign(J, J^c) dx_{J^c}
        std::vector<int> comp;
        std::vector<bool> used(N, false);
        for (int j : J) used[j] = true;
        for (int i = 0; i < N; ++i)
            if (!used[i]) comp.push_back(i);
        std::vector<int> full = J;
        full.insert(full.end(), comp.begin(), comp.end());
        int sign = sort_sign(full);
        out.add(comp, Scalar(static_cast<long>(sign)) * (V * c));
    }
    return out;
}

Multivector sharp(const DiffForm& omega, const DiffForm& vol) {
    const int N = vol.nvars;
    std::vector<int> top(N);
    for (int i = 0; i < N; ++i) top[i] = i;
    Poly V = vol.value(top);
    Scalar vconst = V.constant_term();
    if (V != Poly::constant(N, vconst) || vconst.is_zero())
        throw std::invalid_argument("sharp: volume must have constant nonzero coefficient");

    Multivector out;
    out.degree = N - omega.degree;
    out.nvars = N;
    for (auto& [C, c] : omega.comps) {
        // invert: beta(d_J) = V sign(J,C) dx_C with J = complement of C
        std::vector<int> J;
        std::vector<bool> used(N, false);
        for (int i : C) used[i] = true;
        for (int i = 0; i < N; ++i)
            if (!used[i]) J.push_back(i);
        std::vector<int> full = J;
        full.insert(full.end(), C.begin(), C.end());
        int sign = sort_sign(full);
        Scalar inv = Scalar(static_cast<long>(sign)) / vconst;
        out.add(J, inv * c);
    }
    return out;
}

ContactGeometry::ContactGeometry(int n, int d) : model(n, d) {
    const int N = model.nvars();
    alpha.degree = 1;
    alpha.nvars = N;
    alpha.add({model.z_var()}, Poly::constant(N, Scalar(1)));
    for (int i = 0; i < n; ++i)
        alpha.add({model.q_var(i)}, -Poly::variable(N, model.p_var(i)));
    dalpha = exterior_d(alpha);
    volume = alpha;
    for (int k = 0; k < n; ++k) volume = wedge(volume, dalpha);
    reeb.assign(N, Poly(N));
    reeb[model.z_var()] = Poly::constant(N, Scalar(1));
}

Multivector ContactGeometry::pi_family(int m) const {
    const int n = model.contact_n();
    DiffForm form;
    if (m == n) {
        // (dalpha)^n: proportional to the Reeb field under sharp
        form = dalpha;
        for (int k = 1; k < n; ++k) form = wedge(form, dalpha);
    } else {
        form = alpha;
        for (int k = 0; k < m; ++k) form = wedge(form, dalpha);
    }
    return sharp(form, volume);
}

Bivector ContactGeometry::transverse_poisson() const {
    const int N = model.nvars();
    Bivector out(N);
    for (int i = 0; i < model.contact_n(); ++i)
        out.set_component(model.q_var(i), model.p_var(i), Poly::constant(N, Scalar(1)));
    return out;
}

InvariantChain invariant_chain(const ContactGeometry& geom, int ell, int m) {
    if (ell < 0 || m < 0 || m > geom.model.contact_n())
        throw std::invalid_argument("invariant_chain: bounds exceeded");
    InvariantChain out;
    out.ell = ell;
    out.m = m;
    out.pi = geom.pi_family(m);
    return out;
}

Poly InvariantChain::eval(const ContactGeometry& geom, const std::vector<PolyVectorField>& fields,
                          const std::vector<Poly>& funcs) const {
    const int N = geom.model.nvars();
    Poly out = Poly::constant(N, Scalar(1));
    for (auto& X : fields) {
        // <alpha, X>
        Poly pairing(N);
        for (int v = 0; v < N; ++v) pairing += geom.alpha.value({v}) * X[v];
        out = out * pairing;
    }
    return out * pi.pair_with_differentials(funcs);
}

namespace {

// Evaluate an invariant chain as a section chain over G_R: algebra slots
// take (c R) sections, function slots take the W parts.
GSec invariant_as_gsec_chain(const ContactGeometry& geom, const InvariantChain& theta,
                             const std::vector<GSec>& args) {
    const int N = geom.model.nvars();
    std::vector<PolyVectorField> fields;
    std::vector<Poly> funcs;
    for (int i = 0; i < theta.ell; ++i) {
        PolyVectorField f(N, Poly(N));
        f[geom.model.z_var()] = args[i].s[0];  // c R with R = d/dz
        fields.push_back(std::move(f));
    }
    for (size_t i = theta.ell; i < args.size(); ++i) funcs.push_back(args[i].f);
    GSec val;
    val.s.assign(1, Poly(N));
    val.f = theta.eval(geom, fields, funcs);
    return val;
}

}  // namespace

ContactChecks contact_cycle_checks(const ContactGeometry& geom) {
    ContactChecks out;
    const ContactModel& M = geom.model;
    const int N = M.nvars();
    const int d = M.degree_bound();

    // Reeb product KV identity on monomial sections (exact arithmetic).
    {
        auto funcs = monomials_up_to(N, 0, std::min(2, d));
        bool ok = true;
        for (auto& fm : funcs)
            for (auto& gm : funcs)
                for (auto& hm : funcs) {
                    GSec f, g, h;
                    f.s = {Poly::monomial(N, fm)};
                    f.f = Poly(N);
                    g.s = {Poly::monomial(N, gm)};
                    g.f = Poly(N);
                    h.s = {Poly::monomial(N, hm)};
                    h.f = Poly(N);
                    auto assoc = [&](const GSec& a, const GSec& b, const GSec& c) {
                        return M.field_product(a.s, M.field_product(b.s, c.s))[0] -
                               M.field_product(M.field_product(a.s, b.s), c.s)[0];
                    };
                    if (assoc(f, g, h) != assoc(g, f, h)) ok = false;
                }
        out.reeb_kv = ok ? Verdict::ok() : Verdict::fail("Reeb product associator asymmetry");
    }

    // boundary checks of the invariant chains, on basis section tuples
    auto span = M.span_A();
    for (auto& w : M.span_W(0, d)) span.push_back(w);
    auto check_boundary_zero = [&](const InvariantChain& theta, int q) {
        std::function<GSec(const std::vector<GSec>&)> th = [&](const std::vector<GSec>& a) {
            return invariant_as_gsec_chain(geom, theta, a);
        };
        std::function<void(std::vector<GSec>&, Verdict&)> rec;
        Verdict v = Verdict::ok();
        std::vector<GSec> tuple;
        rec = [&](std::vector<GSec>& t, Verdict& verdict) {
            if (!verdict.pass) return;
            if (static_cast<int>(t.size()) == q + 1) {
                GSec b = eval_boundary(M, q, th, t);
                if (!b.is_zero()) verdict = Verdict::fail("boundary nonzero");
                return;
            }
            for (auto& s : span) {
                t.push_back(s);
                rec(t, verdict);
                t.pop_back();
            }
        };
        rec(tuple, v);
        return v;
    };

    const int n = M.contact_n();
    InvariantChain reeb_chain = invariant_chain(geom, 0, n);       // ~ R as a 1-chain
    InvariantChain alpha_reeb = invariant_chain(geom, 1, n);       // alpha (x) R
    out.d1_reeb = check_boundary_zero(reeb_chain, 1);
    out.d1_alpha_reeb = check_boundary_zero(alpha_reeb, 2);

    // Pi_2, both candidates
    InvariantChain pi2_sharp_chain = invariant_chain(geom, 0, n - 1);
    out.d2_pi2_sharp = check_boundary_zero(pi2_sharp_chain, 2);

    Bivector trans = geom.transverse_poisson();
    {
        MultiDiffChain tc = trans.as_chain();
        std::function<GSec(const std::vector<GSec>&)> th = [&](const std::vector<GSec>& a) {
            GSec val;
            val.s.assign(1, Poly(N));
            val.f = tc.eval({a[0].f, a[1].f});
            return val;
        };
        Verdict v = Verdict::ok();
        for (auto& a : span)
            for (auto& b : span)
                for (auto& c : span) {
                    if (!v.pass) break;
                    GSec bb = eval_boundary(M, 2, th, {a, b, c});
                    if (!bb.is_zero()) v = Verdict::fail("boundary nonzero");
                }
        out.d2_pi2_transverse = v;
    }

    // Jacobi for both Pi_2 candidates
    out.jacobi_pi2 = jacobi_defect(trans).zero ? Verdict::ok() : Verdict::fail("transverse");
    {
        // the sharp bivector as a Bivector
        Multivector p2 = pi2_sharp_chain.pi;
        Bivector sharp_biv(N);
        for (auto& [J, c] : p2.comps) sharp_biv.set_component(J[0], J[1], c);
        JacobiDefect jd = jacobi_defect(sharp_biv);
        out.jacobi_pi2_sharp = jd.zero ? Verdict::ok() : Verdict::fail(jd.witness);
    }

    // L_R of both candidates and of the volume
    {
        Multivector p2 = pi2_sharp_chain.pi;
        Multivector tmv;
        tmv.degree = 2;
        tmv.nvars = N;
        for (int i = 0; i < n; ++i)
            tmv.add({M.q_var(i), M.p_var(i)}, Poly::constant(N, Scalar(1)));
        bool ok = lie_derivative(geom.reeb, p2).is_zero() &&
                  lie_derivative(geom.reeb, tmv).is_zero();
        out.lr_pi2 = ok ? Verdict::ok() : Verdict::fail("L_R Pi_2 != 0");
        // L_R v = 0 for the constant-coefficient volume: coefficients z-free
        bool vol_ok = true;
        for (auto& [J, c] : geom.volume.comps)
            if (!c.derivative(M.z_var()).is_zero()) vol_ok = false;
        out.lr_volume = vol_ok ? Verdict::ok() : Verdict::fail("volume depends on z");
    }

    // transverse bracket values + degeneracy of the z direction
    {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                Poly qi = Poly::variable(N, M.q_var(i));
                Poly pj = Poly::variable(N, M.p_var(j));
                Poly br = trans.bracket(qi, pj);
                Poly expect = i == j ? Poly::constant(N, Scalar(1)) : Poly(N);
                if (br != expect) ok = false;
                // the dalpha-symplectic bracket on the (q,p) block: with
                // omega = sum dq^dp, X_f = f_p dq - f_q dp gives {q_i,p_j} = delta_ij
            }
        out.transverse_bracket = ok ? Verdict::ok() : Verdict::fail("{q,p} mismatch");
        Poly z = Poly::variable(N, M.z_var());
        bool degen = true;
        for (auto& mono : monomials_up_to(N, 0, d)) {
            if (!trans.bracket(Poly::monomial(N, mono), z).is_zero()) degen = false;
            Poly zpow = Poly::monomial(N, [&] {
                Mono mm(N, 0);
                mm[M.z_var()] = 2;
                return mm;
            }());
            if (!trans.bracket(Poly::monomial(N, mono), zpow).is_zero()) degen = false;
        }
        out.z_degenerate = degen ? Verdict::ok() : Verdict::fail("z direction not degenerate");
    }

    // nonvanishing classes inside the truncated finite complex
    {
        SplitAlgebra split = M.to_finite();
        ChainComplex cx(split.G, split.W);
        Matrix d0 = cx.boundary_matrix(0);
        Matrix d1 = cx.boundary_matrix(1);

        // R-chain as a finite 1-chain vector
        Chain rc;
        rc.q = 1;
        const auto wbasis = M.module_basis();
        for (int g = 0; g < split.dimA + split.dimW; ++g) {
            GSec sec = g < split.dimA ? M.section_A(g) : M.section_W(wbasis[g - split.dimA]);
            GSec val = invariant_as_gsec_chain(geom, reeb_chain, {sec});
            bool lost = false;
            Poly red = M.reduce_f(val.f, &lost);
            if (!red.is_zero()) rc.add({g}, M.w_coords(red));
        }
        out.reeb_not_exact = solve(d0, cx.flatten(rc)).has_value()
                                 ? Verdict::fail("R-chain is a boundary in the truncated complex")
                                 : Verdict::ok();

        Chain p2c;
        p2c.q = 2;
        MultiDiffChain tc = trans.as_chain();
        for (int g1 = 0; g1 < split.dimA + split.dimW; ++g1)
            for (int g2 = 0; g2 < split.dimA + split.dimW; ++g2) {
                if (g1 < split.dimA || g2 < split.dimA) continue;
                Poly val = tc.eval({Poly::monomial(N, wbasis[g1 - split.dimA]),
                                    Poly::monomial(N, wbasis[g2 - split.dimA])});
                bool lost = false;
                Poly red = M.reduce_f(val, &lost);
                if (!red.is_zero()) p2c.add({g1, g2}, M.w_coords(red));
            }
        out.pi2_not_exact = solve(d1, cx.flatten(p2c)).has_value()
                                ? Verdict::fail("Pi_2 is a boundary in the truncated complex")
                                : Verdict::ok();
    }
    return out;
}

PolyDiffeo z_translation(const ContactGeometry& geom, const Scalar& c) {
    const int N = geom.model.nvars();
    PolyDiffeo phi;
    for (int v = 0; v < N; ++v) {
        phi.fwd.push_back(Poly::variable(N, v));
        phi.inv.push_back(Poly::variable(N, v));
    }
    phi.fwd[geom.model.z_var()] += Poly::constant(N, c);
    phi.inv[geom.model.z_var()] += Poly::constant(N, -c);
    return phi;
}

PolyDiffeo linear_contacto(const ContactGeometry& geom, const Scalar& a) {
    const int N = geom.model.nvars();
    const int n = geom.model.contact_n();
    PolyDiffeo phi;
    phi.fwd.assign(N, Poly(N));
    phi.inv.assign(N, Poly(N));
    for (int i = 0; i < n; ++i) {
        phi.fwd[geom.model.q_var(i)] = a * Poly::variable(N, geom.model.q_var(i));
        phi.fwd[geom.model.p_var(i)] = (Scalar(1) / a) * Poly::variable(N, geom.model.p_var(i));
        phi.inv[geom.model.q_var(i)] = (Scalar(1) / a) * Poly::variable(N, geom.model.q_var(i));
        phi.inv[geom.model.p_var(i)] = a * Poly::variable(N, geom.model.p_var(i));
    }
    phi.fwd[geom.model.z_var()] = Poly::variable(N, geom.model.z_var());
    phi.inv[geom.model.z_var()] = Poly::variable(N, geom.model.z_var());
    return phi;
}

Verdict check_equivariance(const ContactGeometry& geom, const InvariantChain& theta,
                           const PolyDiffeo& phi, int max_degree) {
    const int N = geom.model.nvars();

    // inverse exactness
    for (int v = 0; v < N; ++v) {
        Poly comp = phi.fwd[v].compose(phi.inv);
        if (comp != Poly::variable(N, v)) return Verdict::fail("inverse not exact");
    }
    // phi* alpha = alpha: (phi* a)_i = sum_j a_j(phi) dphi_j/dx_i
    for (int i = 0; i < N; ++i) {
        Poly acc(N);
        for (int j = 0; j < N; ++j) {
            Poly aj = geom.alpha.value({j});
            if (aj.is_zero()) continue;
            acc += aj.compose(phi.fwd) * phi.fwd[j].derivative(i);
        }
        if (acc != geom.alpha.value({i})) return Verdict::fail("alpha not preserved");
    }

    // equivariance on monomial sections: phi*(theta(xi...)) = theta(phi~ xi...)
    // phi~(s, f) = (phi_* s, f o phi^{-1}) and phi* h = h o phi^{-1}.
    auto push_field = [&](const PolyVectorField& X) {
        PolyVectorField out(N, Poly(N));
        for (int k = 0; k < N; ++k) {
            Poly acc(N);
            for (int j = 0; j < N; ++j) acc += phi.fwd[k].derivative(j) * X[j];
            out[k] = acc.compose(phi.inv);
        }
        return out;
    };

    auto funcs = monomials_up_to(N, 0, max_degree);
    std::vector<Poly> func_polys;
    for (auto& m : funcs) func_polys.push_back(Poly::monomial(N, m));

    const int qA = theta.arity_A();
    const int qW = theta.arity_W();
    // sample algebra slots over constant R (the model algebra), function
    // slots over all monomials up to the bound
    std::vector<PolyVectorField> base_fields(qA);
    for (int i = 0; i < qA; ++i) {
        base_fields[i].assign(N, Poly(N));
        base_fields[i][geom.model.z_var()] = Poly::constant(N, Scalar(1));
    }
    std::vector<PolyVectorField> pushed;
    for (auto& X : base_fields) pushed.push_back(push_field(X));

    std::vector<int> pick(qW, 0);
    std::function<bool(int)> rec = [&](int slot) -> bool {
        if (slot == qW) {
            std::vector<Poly> args, targs;
            for (int i = 0; i < qW; ++i) {
                args.push_back(func_polys[pick[i]]);
                targs.push_back(func_polys[pick[i]].compose(phi.inv));
            }
            Poly lhs = theta.eval(geom, base_fields, args).compose(phi.inv);
            Poly rhs = theta.eval(geom, pushed, targs);
            return lhs == rhs;
        }
        for (size_t k = 0; k < func_polys.size(); ++k) {
            pick[slot] = static_cast<int>(k);
            if (!rec(slot + 1)) return false;
        }
        return true;
    };
    if (!rec(0)) return Verdict::fail("equivariance identity fails on a monomial tuple");
    return Verdict::ok();
}

}  // namespace kvh
