#include "kvh/poisson.hpp"

#include <map>
#include <stdexcept>

namespace kvh {

Bivector::Bivector(int nvars) : nvars_(nvars) {
    comp_.assign(nvars, std::vector<Poly>(nvars, Poly(nvars)));
}

void Bivector::set_component(int i, int j, const Poly& p) {
    if (i == j) {
        if (!p.is_zero()) throw std::invalid_argument("Bivector: diagonal must vanish");
        return;
    }
    comp_[i][j] = p;
    comp_[j][i] = -p;
}

bool Bivector::is_zero() const {
    for (auto& row : comp_)
        for (auto& p : row)
            if (!p.is_zero()) return false;
    return true;
}

Poly Bivector::bracket(const Poly& f, const Poly& g) const {
    Poly out(nvars_);
    for (int i = 0; i < nvars_; ++i)
        for (int j = 0; j < nvars_; ++j) {
            if (comp_[i][j].is_zero()) continue;
            out += comp_[i][j] * f.derivative(i) * g.derivative(j);
        }
    return out;
}

MultiDiffChain Bivector::as_chain(const Scalar& scale) const {
    MultiDiffChain out(2, nvars_);
    for (int i = 0; i < nvars_; ++i)
        for (int j = 0; j < nvars_; ++j) {
            if (comp_[i][j].is_zero()) continue;
            Mono a(nvars_, 0), b(nvars_, 0);
            a[i] = 1;
            b[j] = 1;
            out.add_term({a, b}, scale * comp_[i][j]);
        }
    return out;
}

Bivector Bivector::from_chain_keys(const MultiDiffChain& skew) {
    Bivector out(skew.nvars());
    for (auto& [key, c] : skew.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < skew.nvars(); ++v) {
            if (key[0][v] == 1 && mono_degree(key[0]) == 1) i = v;
            if (key[1][v] == 1 && mono_degree(key[1]) == 1) j = v;
        }
        if (i < 0 || j < 0) throw std::invalid_argument("Bivector: chain is not order (1,1)");
        if (i == j) continue;
        out.comp_[i][j] += c;
    }
    // enforce exact antisymmetry
    for (int i = 0; i < out.nvars_; ++i)
        for (int j = i + 1; j < out.nvars_; ++j) {
            Poly skw = out.comp_[i][j] - (-out.comp_[j][i]);
            if (!skw.is_zero()) throw std::invalid_argument("Bivector: chain keys not antisymmetric");
        }
    return out;
}

bool Bivector::constant_coefficients() const {
    for (auto& row : comp_)
        for (auto& p : row)
            if (!p.is_zero() && p.degree() > 0) return false;
    return true;
}

namespace {

std::string first_term_witness(const MultiDiffChain& c, const std::vector<std::string>& names) {
    if (c.is_zero()) return "";
    auto& [key, p] = *c.terms().begin();
    std::string s = "jet key (";
    for (size_t i = 0; i < key.size(); ++i) {
        if (i) s += ";";
        for (size_t v = 0; v < key[i].size(); ++v)
            if (key[i][v]) s += names[v] + "^" + std::to_string(key[i][v]);
    }
    s += ") coeff " + p.str(names);
    return s;
}

}  // namespace

JacobiDefect jacobi_defect(const Bivector& p) {
    JacobiDefect out;
    MultiDiffChain chain = p.as_chain();
    MultiDiffChain j = chain.plug(1, chain);  // P(f, P(g,h)) on (f,g,h)
    MultiDiffChain cyc = j + j.permuted({1, 2, 0}) + j.permuted({2, 0, 1});
    out.defect = cyc;
    out.zero = cyc.is_zero();
    if (!out.zero) {
        std::vector<std::string> names;
        for (int v = 0; v < p.nvars(); ++v) names.push_back("x" + std::to_string(v + 1));
        out.witness = first_term_witness(cyc, names);
    }
    return out;
}

Verdict parallel_check(const Bivector& p) {
    for (int i = 0; i < p.nvars(); ++i)
        for (int j = i + 1; j < p.nvars(); ++j)
            if (!p.component(i, j).is_zero() && p.component(i, j).degree() > 0)
                return Verdict::fail("component (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") is not constant");
    return Verdict::ok();
}

GSec theta_associator(const AlgebroidModel& model, const GChain2& theta, const GSec& x,
                      const GSec& y, const GSec& z) {
    GSec inner1 = theta(y, z);
    GSec lhs = theta(x, inner1);
    GSec inner2 = theta(x, y);
    GSec rhs = theta(inner2, z);
    GSec out;
    out.s.resize(model.field_components(), Poly(model.nvars()));
    for (int c = 0; c < model.field_components(); ++c) out.s[c] = lhs.s[c] - rhs.s[c];
    out.f = lhs.f - rhs.f;
    return out;
}

Boundary2Blocks boundary2_blocks(const AlgebroidModel& model, const MultiDiffChain& theta) {
    Boundary2Blocks out;
    // (W,W,W): -f th(g,h) + th(fg,h) + th(g,fh) - th(g,f)h + g th(f,h)
    //          - th(gf,h) - th(f,gh) + th(f,g)h
    MultiDiffChain t1 = theta.insert_mult_slot(0);                      // f th(g,h)
    MultiDiffChain t2 = theta.expand_product_slot(0);                   // th(fg,h)
    MultiDiffChain t3 = theta.expand_product_slot(1).permuted({1, 0, 2});  // th(g,fh)
    MultiDiffChain t4 = theta.transpose().right_mult_slot();            // th(g,f)h
    MultiDiffChain t5 = theta.insert_mult_slot(1);                      // g th(f,h)
    MultiDiffChain t6 = t2;                                             // th(gf,h) = th(fg,h)
    MultiDiffChain t7 = theta.expand_product_slot(1);                   // th(f,gh)
    MultiDiffChain t8 = theta.right_mult_slot();                        // th(f,g)h
    out.www = -t1 + t2 + t3 - t4 + t5 - t6 - t7 + t8;

    // (A,W,W) per algebra basis field S:
    //   -a(S).th(g,h) + th(a(S)g, h) + th(g, a(S)h)
    std::vector<int> dirs;
    if (auto* cot = dynamic_cast<const CotangentModel*>(&model)) {
        for (int i = 0; i < cot->base_dim(); ++i) dirs.push_back(cot->p_var(i));
    } else if (auto* con = dynamic_cast<const ContactModel*>(&model)) {
        dirs.push_back(con->z_var());
    } else {
        dirs.push_back(0);  // jet line: single variable
    }
    for (auto& S : model.algebra_basis()) {
        MultiDiffChain b = -theta.anchor_on_value(S, dirs) + theta.anchor_into_slot(0, S, dirs) +
                           theta.anchor_into_slot(1, S, dirs);
        out.aww.push_back(std::move(b));
    }
    return out;
}

std::vector<TypedBoundaryTerm> boundary2_typed_terms(const AlgebroidModel& model,
                                                     const MultiDiffChain& theta) {
    std::vector<TypedBoundaryTerm> out;
    // (W,W,W) pattern: jet types are the term keys of the symbolic block.
    Boundary2Blocks blocks = boundary2_blocks(model, theta);
    for (auto& [key, c] : blocks.www.terms())
        out.push_back({MultiDiffChain::jet_type(key), c});

    // (A,W,W) pattern, with the S-jet tracked term by term:
    //   -a(S).theta(g,h):  S undifferentiated (jet 0); either a coefficient
    //       derivative (argument jets unchanged) or an argument raise;
    //   theta(a(S)g, h) and theta(g, a(S)h): S differentiated to order |mu|,
    //       the touched argument's jet becomes |alpha| - |mu| + 1.
    std::vector<int> dirs;
    if (auto* cot = dynamic_cast<const CotangentModel*>(&model)) {
        for (int i = 0; i < cot->base_dim(); ++i) dirs.push_back(cot->p_var(i));
    } else if (auto* con = dynamic_cast<const ContactModel*>(&model)) {
        dirs.push_back(con->z_var());
    } else {
        dirs.push_back(0);
    }
    const int nv = model.nvars();
    for (auto& S : model.algebra_basis()) {
        for (auto& [key, c] : theta.terms()) {
            auto base_type = MultiDiffChain::jet_type(key);
            for (size_t comp = 0; comp < S.size(); ++comp) {
                if (S[comp].is_zero()) continue;
                const int dir = dirs[comp];
                // -S . value: coefficient derivative (jets unchanged)
                Poly cd = S[comp] * c.derivative(dir);
                if (!cd.is_zero()) out.push_back({[&] {
                                                      std::vector<int> t{0};
                                                      t.insert(t.end(), base_type.begin(), base_type.end());
                                                      return t;
                                                  }(),
                                                  -cd});
                // -S . value: argument raises
                for (int slot = 0; slot < 2; ++slot) {
                    std::vector<int> t{0, base_type[0], base_type[1]};
                    t[1 + slot] += 1;
                    out.push_back({t, -(S[comp] * c)});
                }
                // theta(a(S) arg, ...) on each slot
                for (int slot = 0; slot < 2; ++slot) {
                    const Mono& alpha = key[slot];
                    Mono mu(nv, 0);
                    std::function<void(size_t)> loop = [&](size_t v) {
                        if (v == mu.size()) {
                            Poly coeff = mono_binomial(alpha, mu) * (c * S[comp].derivative(mu));
                            if (coeff.is_zero()) return;
                            std::vector<int> t{mono_degree(mu), base_type[0], base_type[1]};
                            t[1 + slot] = mono_degree(alpha) - mono_degree(mu) + 1;
                            out.push_back({t, coeff});
                            return;
                        }
                        for (uint8_t x = 0; x <= alpha[v]; ++x) {
                            mu[v] = x;
                            loop(v + 1);
                        }
                        mu[v] = 0;
                    };
                    loop(0);
                }
            }
        }
    }
    return out;
}

KvCycleVerdicts is_kv_cycle(const AlgebroidModel& model, const MultiDiffChain& theta) {
    KvCycleVerdicts out;
    const auto names = model.var_names();

    // (i) chain: theta-associator symmetric in its first two arguments.
    MultiDiffChain a1 = theta.plug(1, theta);  // th(f1, th(f2,f3))
    MultiDiffChain a2 = theta.plug(0, theta);  // th(th(f1,f2), f3)
    MultiDiffChain assoc = a1 - a2;
    MultiDiffChain d = assoc - assoc.permuted({1, 0, 2});
    if (!d.is_zero())
        out.chain = Verdict::fail("theta-associator asymmetry: " + first_term_witness(d, names));

    // (ii) delta_2 theta = 0 on all argument patterns.
    Boundary2Blocks blocks = boundary2_blocks(model, theta);
    if (!blocks.www.is_zero())
        out.closed = Verdict::fail("function pattern: " + first_term_witness(blocks.www, names));
    for (size_t i = 0; i < blocks.aww.size() && out.closed.pass; ++i)
        if (!blocks.aww[i].is_zero())
            out.closed = Verdict::fail("algebra slot, basis field " + std::to_string(i + 1) + ": " +
                                       first_term_witness(blocks.aww[i], names));

    // (iii) same for the skew component.
    MultiDiffChain pi = (theta - theta.transpose()).scaled(Scalar(1, 2));
    Boundary2Blocks pib = boundary2_blocks(model, pi);
    if (!pib.www.is_zero())
        out.skew_closed = Verdict::fail("skew, function pattern: " + first_term_witness(pib.www, names));
    for (size_t i = 0; i < pib.aww.size() && out.skew_closed.pass; ++i)
        if (!pib.aww[i].is_zero())
            out.skew_closed = Verdict::fail("skew, algebra slot " + std::to_string(i + 1));
    return out;
}

GSec eval_boundary(const AlgebroidModel& model, int q,
                   const std::function<GSec(const std::vector<GSec>&)>& theta,
                   const std::vector<GSec>& args) {
    if (static_cast<int>(args.size()) != q + 1)
        throw std::invalid_argument("eval_boundary: need q+1 arguments");
    GSec total;
    total.s.assign(model.field_components(), Poly(model.nvars()));
    total.f = Poly(model.nvars());
    auto add_scaled = [&](const GSec& v, long sign) {
        Scalar s(sign);
        for (int c = 0; c < model.field_components(); ++c)
            total.s[c] += s * v.s[c];
        total.f += s * v.f;
    };

    for (int j = 1; j <= q; ++j) {
        long sign = (j % 2) ? -1 : 1;
        std::vector<GSec> rest;
        for (int k = 0; k <= q; ++k)
            if (k != j - 1) rest.push_back(args[k]);

        // a_j . theta(rest)   (left action/product by the removed slot)
        add_scaled(model.mul(args[j - 1], theta(rest)), sign);

        // - theta(..., a_j a_i, ...)
        for (int i = 0; i < q; ++i) {
            auto modified = rest;
            modified[i] = model.mul(args[j - 1], rest[i]);
            add_scaled(theta(modified), -sign);
        }

        // (e_q(a_j) theta) . a_{q+1}
        std::vector<GSec> ins(rest.begin(), rest.end() - 1);
        ins.push_back(args[j - 1]);
        add_scaled(model.mul(theta(ins), args[q]), sign);
    }
    return total;
}

ExtractionResult extract_poisson(const AlgebroidModel& model, const MultiDiffChain& theta) {
    ExtractionResult out;
    out.order = theta.order();
    MultiDiffChain sigma = theta.symbol();
    MultiDiffChain skew = (sigma - sigma.transpose()).scaled(Scalar(1, 2));
    if (skew.is_zero()) {
        out.ok = true;
        out.pi = Bivector(model.nvars());
        out.jacobi = Verdict::ok();
        out.leibniz = Verdict::ok();
        return out;
    }
    if (out.order >= 2) {
        // Order reduction violated: a certified skew symbol of order >= 2.
        // Emit the L(f,g,h) = f th(g,h) + th(g,f)h - th(g,fh) diagnostics.
        MultiDiffChain L = theta.insert_mult_slot(0) + theta.transpose().right_mult_slot() -
                           theta.expand_product_slot(1).permuted({1, 0, 2});
        MultiDiffChain defect = L - L.permuted({1, 0, 2});
        out.failure = "order " + std::to_string(out.order) +
                      " skew symbol encountered; L-symmetry defect " +
                      (defect.is_zero() ? "vanishes" : "nonzero") + " -> rejected";
        return out;
    }
    out.pi = Bivector::from_chain_keys(skew);
    JacobiDefect jd = jacobi_defect(out.pi);
    out.jacobi = jd.zero ? Verdict::ok() : Verdict::fail(jd.witness);
    // Leibniz: P(g, fh) = f P(g,h) + P(g,f) h, symbolically.
    MultiDiffChain pc = out.pi.as_chain();
    MultiDiffChain lhs = pc.expand_product_slot(1).permuted({1, 0, 2});  // P(g, fh) on (f,g,h)
    MultiDiffChain rhs = pc.insert_mult_slot(0) + pc.transpose().right_mult_slot();
    out.leibniz = (lhs - rhs).is_zero() ? Verdict::ok() : Verdict::fail("leibniz defect");
    out.ok = out.jacobi.pass && out.leibniz.pass;
    if (!out.ok) out.failure = "extracted bivector failed Jacobi/Leibniz";
    return out;
}

Verdict first_integral_closure(const AlgebroidModel& model, const MultiDiffChain& theta,
                               const Poly& f, const Poly& g) {
    // preconditions: f, g are first integrals of the anchor image
    for (auto& S : model.algebra_basis()) {
        if (!model.anchor_apply(S, f).is_zero() || !model.anchor_apply(S, g).is_zero())
            throw std::invalid_argument("first_integral_closure: argument is not a first integral");
    }
    MultiDiffChain lambda = theta - theta.transpose();
    Poly bracket = lambda.eval({f, g});
    MultiDiffChain sigma_skew = (theta.symbol() - theta.symbol().transpose()).scaled(Scalar(1, 2));
    Poly pib = sigma_skew.is_zero() ? Poly(model.nvars()) : sigma_skew.eval({f, g});
    for (auto& S : model.algebra_basis()) {
        // closure: s.Lambda(f,g) = Lambda(sf,g) + Lambda(f,sg) = 0 here
        Poly lhs = model.anchor_apply(S, bracket);
        if (!lhs.is_zero()) return Verdict::fail("bracket leaves the first-integral algebra");
        if (!model.anchor_apply(S, pib).is_zero())
            return Verdict::fail("symbol bracket leaves the first-integral algebra");
    }
    return Verdict::ok();
}

Bivector project_to_base(const CotangentModel& model, const Bivector& pi) {
    const int m = model.base_dim();
    // the pullback block must be fiber-independent
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Poly& c = pi.component(model.q_var(i), model.q_var(j));
            for (auto& [mono, s] : c.terms())
                for (int k = 0; k < m; ++k)
                    if (mono[model.p_var(k)] != 0)
                        throw std::invalid_argument(
                            "project_to_base: pullback bracket depends on the fiber");
        }
    Bivector base(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Poly c = pi.component(model.q_var(i), model.q_var(j));
            // restrict variables to the base (q) block
            Poly b(m);
            for (auto& [mono, s] : c.terms()) {
                Mono bm(m, 0);
                for (int k = 0; k < m; ++k) bm[k] = mono[model.q_var(k)];
                b.add_term(bm, s);
            }
            base.set_component(i, j, b);
        }
    JacobiDefect jd = jacobi_defect(base);
    if (!jd.zero)
        throw std::domain_error("project_to_base: projected bivector is not Poisson: " + jd.witness);
    return base;
}

LiftResult lift_poisson(const CotangentModel& model, const Bivector& base, LiftMode mode) {
    JacobiDefect pre = jacobi_defect(base);
    if (!pre.zero) throw std::invalid_argument("lift_poisson: base bivector is not Poisson");

    const int m = model.base_dim();
    const int N = model.nvars();
    LiftResult out;
    out.mode = mode;
    out.p_tilde = Bivector(N);

    auto pull_up = [&](const Poly& b) {  // base polynomial -> q-block polynomial
        Poly out_p(N);
        for (auto& [mono, s] : b.terms()) {
            Mono full(N, 0);
            for (int k = 0; k < m; ++k) full[model.q_var(k)] = mono[k];
            out_p.add_term(full, s);
        }
        return out_p;
    };

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (base.component(i, j).is_zero()) continue;
            Poly c = pull_up(base.component(i, j));
            if (mode == LiftMode::ZeroSection) {
                // horizontal: coefficients from the zero section, q-directions
                if (i < j) out.p_tilde.set_component(model.q_var(i), model.q_var(j), c);
            } else {
                // the printed local form: sum P_ij dp_i ^ dq_j
                out.p_tilde.set_component(model.p_var(i), model.q_var(j),
                                          out.p_tilde.component(model.p_var(i), model.q_var(j)) + c);
            }
        }

    out.theta = out.p_tilde.as_chain(Scalar(1, 2));
    out.cycle = is_kv_cycle(model, out.theta);
    JacobiDefect jd = jacobi_defect(out.p_tilde);
    out.jacobi = jd.zero ? Verdict::ok() : Verdict::fail(jd.witness);
    // Leibniz holds for any bivector pairing; verify anyway.
    MultiDiffChain pc = out.p_tilde.as_chain();
    MultiDiffChain lhs = pc.expand_product_slot(1).permuted({1, 0, 2});
    MultiDiffChain rhs = pc.insert_mult_slot(0) + pc.transpose().right_mult_slot();
    out.leibniz = (lhs - rhs).is_zero() ? Verdict::ok() : Verdict::fail("leibniz defect");
    // vertical compatibility = the (A,W,W) pattern of the boundary
    Boundary2Blocks blocks = boundary2_blocks(model, out.theta);
    out.vertical_compat = Verdict::ok();
    for (size_t i = 0; i < blocks.aww.size(); ++i)
        if (!blocks.aww[i].is_zero()) {
            out.vertical_compat = Verdict::fail("basis field " + std::to_string(i + 1));
            break;
        }
    return out;
}

RoundtripResult roundtrip_check(const CotangentModel& model, const Bivector& base, Rng& rng) {
    RoundtripResult out;
    LiftResult lift = lift_poisson(model, base, LiftMode::ZeroSection);

    // direct route: project the lifted tensor itself
    Bivector back = project_to_base(model, lift.p_tilde);
    out.direct_exact = (back == base);

    // extraction route: extract(theta) = (1/2) P~ under the half conventions
    ExtractionResult ex = extract_poisson(model, lift.theta);
    bool half_matches = !ex.ok ? false : [&] {
        Bivector doubled(model.nvars());
        for (int i = 0; i < model.nvars(); ++i)
            for (int j = i + 1; j < model.nvars(); ++j)
                doubled.set_component(i, j, Scalar(2) * ex.pi.component(i, j));
        return doubled == lift.p_tilde;
    }();
    out.extract_consistent = half_matches;

    // uniqueness probe: boundaries contribute nothing to the skew function
    // bracket, so two representatives of a class project identically. Sample
    // random order-<=1 one-chain function blocks E and check the skew part of
    // -f E(g) + E(fg) - E(f) g vanishes identically.
    out.boundaries_project_to_zero = true;
    for (int t = 0; t < 5; ++t) {
        MultiDiffChain e(1, model.nvars());
        for (int v = 0; v <= model.nvars(); ++v) {
            Mono a(model.nvars(), 0);
            if (v > 0) a[v - 1] = 1;
            Poly c(model.nvars());
            for (auto& mono : monomials_up_to(model.nvars(), 0, 1)) {
                Scalar s = rng.small_scalar(2);
                if (!s.is_zero()) c.add_term(mono, s);
            }
            e.add_term({a}, c);
        }
        MultiDiffChain db = -e.insert_mult_slot(0) + e.expand_product_slot(0) - e.right_mult_slot();
        MultiDiffChain skew = db - db.transpose();
        if (!skew.is_zero()) out.boundaries_project_to_zero = false;
    }

    out.pass = out.direct_exact && out.extract_consistent && out.boundaries_project_to_zero;
    if (!out.pass) out.detail = "roundtrip components failed";
    return out;
}

VectorFieldLift lift_vector_field(const CotangentModel& model, const PolyVectorField& x) {
    const int m = model.base_dim();
    const int N = model.nvars();
    if (static_cast<int>(x.size()) != m)
        throw std::invalid_argument("lift_vector_field: need m base components");
    for (auto& c : x)
        if (c.degree() > model.degree_bound() - 1)
            throw std::invalid_argument("lift_vector_field: degree overflow");

    VectorFieldLift out;
    auto pull_up = [&](const Poly& b) {
        Poly o(N);
        for (auto& [mono, s] : b.terms()) {
            Mono full(N, 0);
            for (int k = 0; k < m; ++k) full[model.q_var(k)] = mono[k];
            o.add_term(full, s);
        }
        return o;
    };

    // X~ = sum X_i d/dq_i - sum_{i,j} p_j dX_j/dq_i d/dp_i
    out.x_tilde.assign(N, Poly(N));
    std::vector<Poly> xq(m, Poly(N));
    for (int i = 0; i < m; ++i) {
        xq[i] = pull_up(x[i]);
        out.x_tilde[model.q_var(i)] = xq[i];
    }
    for (int i = 0; i < m; ++i) {
        Poly v(N);
        for (int j = 0; j < m; ++j)
            v -= Poly::variable(N, model.p_var(j)) * xq[j].derivative(model.q_var(i));
        out.x_tilde[model.p_var(i)] = v;
    }

    auto xt = out.x_tilde;
    auto full_derive = [N, xt](const Poly& f) {
        Poly o(N);
        for (int v = 0; v < N; ++v) o += xt[v] * f.derivative(v);
        return o;
    };

    out.chain = [&model, xt, full_derive, m, N](const GSec& xi) {
        GSec val;
        val.s.assign(m, Poly(N));
        // [X~, S] on the vertical components: X~(S_k) - S(V_k) with V_k the
        // p_k-coefficient of X~ (the q-coefficients of X~ are p-independent,
        // so S applied to them vanishes).
        for (int k = 0; k < m; ++k) {
            Poly t(N);
            for (int v = 0; v < N; ++v) t += xt[v] * xi.s[k].derivative(v);
            for (int i = 0; i < m; ++i) t -= xi.s[i] * xt[m + k].derivative(m + i);
            val.s[k] = t;
        }
        val.f = full_derive(xi.f);
        return val;
    };

    // delta_1 L = 0 on all pairs from the basis spans, computed exactly.
    out.closed = Verdict::ok();
    std::vector<GSec> span = model.span_A();
    for (auto& w : model.span_W(0, model.degree_bound())) span.push_back(w);
    auto L = out.chain;
    for (auto& a : span) {
        for (auto& b : span) {
            // -a L(b) + L(ab) - L(a) b
            GSec t = model.mul(a, L(b));
            GSec u = L(model.mul(a, b));
            GSec v = model.mul(L(a), b);
            bool zero = true;
            for (int c = 0; c < m; ++c)
                if (!(u.s[c] - t.s[c] - v.s[c]).is_zero()) zero = false;
            if (!(u.f - t.f - v.f).is_zero()) zero = false;
            if (!zero) {
                out.closed = Verdict::fail("delta_1 L != 0 on a basis pair");
                break;
            }
        }
        if (!out.closed.pass) break;
    }

    // Liouville pairing: L_X~ (sum p_i dq_i) = 0.
    // components: d(i_X lambda) + i_X dlambda with lambda = sum p_i dq_i.
    out.liouville = Verdict::ok();
    {
        Poly ixl(N);
        for (int i = 0; i < m; ++i) ixl += Poly::variable(N, model.p_var(i)) * xt[model.q_var(i)];
        // (L_X lambda)_{q_j} = d(ixl)/dq_j + V_j ; (L_X lambda)_{p_j} = d(ixl)/dp_j - X_j
        for (int j = 0; j < m; ++j) {
            Poly dq = ixl.derivative(model.q_var(j)) + xt[model.p_var(j)];
            Poly dp = ixl.derivative(model.p_var(j)) - xt[model.q_var(j)];
            if (!dq.is_zero() || !dp.is_zero()) {
                out.liouville = Verdict::fail("canonical one-form not preserved");
                break;
            }
        }
    }
    return out;
}

ClassIndependence chain_classes_independent(const CotangentModel& model,
                                            const std::vector<VectorFieldLift>& lifts) {
    // Arguments: the finite model's basis sections. Values: all polynomial
    // coordinates that appear (no truncation; the window adapts).
    std::vector<GSec> args = model.span_A();
    for (auto& w : model.span_W(0, model.degree_bound())) args.push_back(w);

    // delta_0 sources: J(G) of the finite model.
    SplitAlgebra split = model.to_finite();
    SubspaceBasis jg = j_space(split.G, KVModule::regular(split.G));
    auto section_of_coords = [&](const SparseVec& v) {
        GSec s;
        s.s.assign(model.field_components(), Poly(model.nvars()));
        s.f = Poly(model.nvars());
        const auto abasis = model.algebra_basis();
        const auto wbasis = model.module_basis();
        for (auto& [i, c] : v) {
            if (i < split.dimA) {
                for (int k = 0; k < model.field_components(); ++k) s.s[k] += c * abasis[i][k];
            } else {
                s.f.add_term(wbasis[i - split.dimA], c);
            }
        }
        return s;
    };

    // Collect values: each chain gives per-argument a GSec; coordinates are
    // (component, monomial) pairs collected across everything.
    std::map<std::pair<int, Mono>, int> coord_index;
    auto coords_of = [&](const std::vector<GSec>& values) {
        std::vector<std::pair<int, Scalar>> sv;
        for (size_t a = 0; a < values.size(); ++a) {
            const GSec& v = values[a];
            for (int c = 0; c <= model.field_components(); ++c) {
                const Poly& p = c < model.field_components() ? v.s[c] : v.f;
                for (auto& [mono, s] : p.terms()) {
                    auto key = std::make_pair(c, mono);
                    auto [it, fresh] = coord_index.try_emplace(key, static_cast<int>(coord_index.size()));
                    sv.emplace_back(static_cast<int>(a) * 1000000 + it->second, s);
                }
            }
        }
        return sv;
    };

    std::vector<SparseVec> boundary_cols;
    for (auto& jvec : jg.vectors) {
        GSec eta = section_of_coords(jvec);
        std::vector<GSec> vals;
        for (auto& a : args) {
            GSec l = model.mul(a, eta);
            GSec r = model.mul(eta, a);
            GSec d;
            d.s.resize(model.field_components());
            for (int c = 0; c < model.field_components(); ++c) d.s[c] = r.s[c] - l.s[c];
            d.f = r.f - l.f;
            vals.push_back(std::move(d));
        }
        boundary_cols.push_back(sparse_normalize(coords_of(vals)));
    }
    std::vector<SparseVec> with_chains = boundary_cols;
    for (auto& lift : lifts) {
        std::vector<GSec> vals;
        for (auto& a : args) vals.push_back(lift.chain(a));
        with_chains.push_back(sparse_normalize(coords_of(vals)));
    }

    // a shared dense row space: remap the ad-hoc indices
    std::map<int, int> remap;
    for (auto& col : with_chains)
        for (auto& [r, s] : col) remap.try_emplace(r, static_cast<int>(remap.size()));
    auto remap_col = [&](SparseVec v) {
        for (auto& [r, s] : v) r = remap[r];
        return sparse_normalize(std::move(v));
    };
    std::vector<SparseVec> b2, w2;
    for (auto& c : boundary_cols) b2.push_back(remap_col(c));
    for (auto& c : with_chains) w2.push_back(remap_col(c));

    ClassIndependence out;
    out.rank_boundaries = rank(Matrix::from_columns(static_cast<int>(remap.size()), b2));
    out.rank_with_chains = rank(Matrix::from_columns(static_cast<int>(remap.size()), w2));
    out.independent =
        out.rank_with_chains == out.rank_boundaries + static_cast<int>(lifts.size());
    return out;
}

}  // namespace kvh
