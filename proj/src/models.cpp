#include "kvh/models.hpp"

#include <map>
#include <stdexcept>

namespace kvh {

PolyVectorField formal_vf_product(const PolyVectorField& x, const PolyVectorField& y) {
    const int m = static_cast<int>(x.size());
    if (y.size() != x.size()) throw std::invalid_argument("formal_vf_product: variable-count mismatch");
    PolyVectorField out(m, Poly(x.empty() ? 0 : x[0].nvars()));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) out[j] += x[i] * y[j].derivative(i);
    return out;
}

PolyVectorField formal_vf_product_literal(const PolyVectorField& x, const PolyVectorField& y) {
    const int m = static_cast<int>(x.size());
    if (y.size() != x.size()) throw std::invalid_argument("formal_vf_product: variable-count mismatch");
    PolyVectorField out(m, Poly(x.empty() ? 0 : x[0].nvars()));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out[i] += x[i] * y[j].derivative(i);
    return out;
}

GSec AlgebroidModel::mul(const GSec& x, const GSec& y) const {
    GSec out;
    out.s = field_product(x.s, y.s);
    out.f = x.f * y.f + anchor_apply(x.s, y.f);
    return out;
}

Poly AlgebroidModel::act_left(const GSec& x, const Poly& w) const {
    return x.f * w + anchor_apply(x.s, w);
}

Poly AlgebroidModel::act_right(const Poly& w, const GSec& x) const { return w * x.f; }

Poly AlgebroidModel::reduce_f(const Poly& f, bool* lost) const {
    return f.truncated(degree_bound(), lost);
}

std::vector<Poly> AlgebroidModel::reduce_s(const std::vector<Poly>& s, bool* lost) const {
    std::vector<Poly> out;
    out.reserve(s.size());
    for (auto& c : s) out.push_back(c.truncated(degree_bound(), lost));
    return out;
}

GSec AlgebroidModel::section_A(int basis_index) const {
    GSec x;
    x.s = algebra_basis()[basis_index];
    x.f = Poly(nvars());
    return x;
}

GSec AlgebroidModel::section_W(const Mono& m) const {
    GSec x;
    x.s.assign(field_components(), Poly(nvars()));
    x.f = Poly::monomial(nvars(), m);
    return x;
}

GSec AlgebroidModel::section_W(const Poly& f) const {
    GSec x;
    x.s.assign(field_components(), Poly(nvars()));
    x.f = f;
    return x;
}

std::vector<GSec> AlgebroidModel::span_W(int lo, int hi) const {
    std::vector<GSec> out;
    for (auto& m : monomials_up_to(nvars(), lo, std::min(hi, degree_bound())))
        out.push_back(section_W(m));
    return out;
}

std::vector<GSec> AlgebroidModel::span_A() const {
    std::vector<GSec> out;
    const auto basis = algebra_basis();
    for (size_t i = 0; i < basis.size(); ++i) out.push_back(section_A(static_cast<int>(i)));
    return out;
}

SparseVec AlgebroidModel::w_coords(const Poly& f) const {
    const auto basis = module_basis();
    std::map<Mono, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    SparseVec out;
    for (auto& [m, c] : f.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw std::invalid_argument("w_coords: term outside module basis");
        out.emplace_back(it->second, c);
    }
    return sparse_normalize(std::move(out));
}

SparseVec AlgebroidModel::g_coords(const GSec& x) const {
    const auto abasis = algebra_basis();
    const int dimA = static_cast<int>(abasis.size());
    // Expand the field part in the algebra basis. Model bases are monomial
    // fields (single monomial coefficient on a single component), so the
    // expansion is coefficient reading.
    SparseVec out;
    std::vector<Poly> rest = x.s;
    for (int b = 0; b < dimA; ++b) {
        // locate the (component, monomial) of basis field b
        for (int c = 0; c < field_components(); ++c) {
            if (abasis[b][c].is_zero()) continue;
            const auto& [mono, coeff] = *abasis[b][c].terms().begin();
            Scalar have = rest[c].coeff(mono) / coeff;
            if (!have.is_zero()) {
                out.emplace_back(b, have);
                rest[c] -= have * abasis[b][c];
            }
        }
    }
    for (auto& c : rest)
        if (!c.is_zero()) throw std::invalid_argument("g_coords: field outside algebra basis");
    for (auto& [w, s] : w_coords(x.f)) out.emplace_back(dimA + w, s);
    return sparse_normalize(std::move(out));
}

SplitAlgebra AlgebroidModel::to_finite(bool* reduced) const {
    const auto abasis = algebra_basis();
    const auto wbasis = module_basis();
    const int dimA = static_cast<int>(abasis.size());
    const int dimW = static_cast<int>(wbasis.size());
    bool lost = false;

    SplitAlgebra split;
    split.dimA = dimA;
    split.dimW = dimW;
    split.G = KVAlgebra(dimA + dimW);
    {
        std::vector<std::string> labels;
        const auto names = var_names();
        for (int b = 0; b < dimA; ++b) labels.push_back("s" + std::to_string(b + 1));
        for (auto& m : wbasis) labels.push_back(Poly::monomial(nvars(), m).str(names));
        split.G.set_labels(std::move(labels));
    }

    auto section_of = [&](int g) {
        return g < dimA ? section_A(g) : section_W(wbasis[g - dimA]);
    };
    for (int i = 0; i < dimA + dimW; ++i)
        for (int j = 0; j < dimA + dimW; ++j) {
            GSec prod = mul(section_of(i), section_of(j));
            prod.s = reduce_s(prod.s, &lost);
            prod.f = reduce_f(prod.f, &lost);
            split.G.set_product(i, j, g_coords(prod));
        }

    split.W = KVModule(dimA + dimW, dimW);
    for (int i = 0; i < dimA + dimW; ++i)
        for (int w = 0; w < dimW; ++w) {
            Poly wp = Poly::monomial(nvars(), wbasis[w]);
            Poly lv = reduce_f(act_left(section_of(i), wp), &lost);
            split.W.set_left(i, w, w_coords(lv));
            Poly rv = reduce_f(act_right(wp, section_of(i)), &lost);
            split.W.set_right(w, i, w_coords(rv));
        }

    for (int w = 0; w < dimW; ++w)
        if (mono_degree(wbasis[w]) == 0) split.unit_w = w;
    if (reduced) *reduced = lost;
    return split;
}

// ---- jet line ---------------------------------------------------------------

JetLineModel::JetLineModel(int depth) : d_(depth) {
    if (depth < 1) throw std::invalid_argument("JetLineModel: depth >= 1 required");
}

std::vector<Poly> JetLineModel::field_product(const std::vector<Poly>& s,
                                              const std::vector<Poly>& t) const {
    // (f d)(g d) = f g' d
    return {s[0] * t[0].derivative(0)};
}

Poly JetLineModel::anchor_apply(const std::vector<Poly>& s, const Poly& f) const {
    return s[0] * f.derivative(0);
}

std::vector<std::vector<Poly>> JetLineModel::algebra_basis() const {
    std::vector<std::vector<Poly>> out;
    for (int k = 1; k <= d_; ++k) out.push_back({Poly::variable(1, 0, k)});
    return out;
}

std::vector<Mono> JetLineModel::module_basis() const { return monomials_up_to(1, 0, d_); }

// ---- cotangent --------------------------------------------------------------

CotangentModel::CotangentModel(int m, int d) : m_(m), d_(d) {
    if (m < 1 || d < 1) throw std::invalid_argument("CotangentModel: m, d >= 1 required");
}

std::vector<std::string> CotangentModel::var_names() const {
    std::vector<std::string> names;
    for (int i = 1; i <= m_; ++i) names.push_back("q" + std::to_string(i));
    for (int i = 1; i <= m_; ++i) names.push_back("p" + std::to_string(i));
    return names;
}

std::vector<Poly> CotangentModel::field_product(const std::vector<Poly>& s,
                                                const std::vector<Poly>& t) const {
    // flat fiberwise product: (S S')_j = sum_i S_i dS'_j/dp_i
    std::vector<Poly> out(m_, Poly(nvars()));
    for (int j = 0; j < m_; ++j)
        for (int i = 0; i < m_; ++i) out[j] += s[i] * t[j].derivative(p_var(i));
    return out;
}

Poly CotangentModel::anchor_apply(const std::vector<Poly>& s, const Poly& f) const {
    Poly out(nvars());
    for (int i = 0; i < m_; ++i) out += s[i] * f.derivative(p_var(i));
    return out;
}

std::vector<std::vector<Poly>> CotangentModel::algebra_basis() const {
    std::vector<std::vector<Poly>> out;
    // pure-p monomials of degree 1..d on each vertical direction
    for (int k = 0; k < m_; ++k)
        for (auto& mu : monomials_up_to(m_, 1, d_)) {
            Mono full(nvars(), 0);
            for (int i = 0; i < m_; ++i) full[p_var(i)] = mu[i];
            std::vector<Poly> field(m_, Poly(nvars()));
            field[k] = Poly::monomial(nvars(), full);
            out.push_back(std::move(field));
        }
    return out;
}

std::vector<Mono> CotangentModel::module_basis() const {
    return monomials_up_to(nvars(), 0, d_);
}

std::vector<std::vector<Poly>> CotangentModel::general_vertical_fields(int max_deg) const {
    std::vector<std::vector<Poly>> out;
    for (int k = 0; k < m_; ++k)
        for (auto& mu : monomials_up_to(nvars(), 1, max_deg)) {
            std::vector<Poly> field(m_, Poly(nvars()));
            field[k] = Poly::monomial(nvars(), mu);
            out.push_back(std::move(field));
        }
    return out;
}

Verdict CotangentModel::lagrangian_product_check(const std::vector<Poly>& s,
                                                 const std::vector<Poly>& t) const {
    // Liouville symplectic form omega = sum dq_i ^ dp_i. For vertical fields:
    //   i(t) omega = -sum t_j dq_j
    //   L_s i(t) omega = i_s d(-sum t_j dq_j) = -sum (a(s) t_j) dq_j
    // so i(ss') omega = L_s i(s') omega reduces to the flat product formula
    // component by component; compute both sides through the form calculus.
    std::vector<Poly> rhs(m_, Poly(nvars()));
    // d(-sum t_j dq_j) = -sum dt_j ^ dq_j; contract with vertical s:
    // i_s(dt_j ^ dq_j) = s(t_j) dq_j - 0.
    for (int j = 0; j < m_; ++j) rhs[j] = anchor_apply(s, t[j]);
    std::vector<Poly> lhs = field_product(s, t);
    for (int j = 0; j < m_; ++j)
        if (lhs[j] != rhs[j]) return Verdict::fail("component " + std::to_string(j + 1));
    return Verdict::ok();
}

// ---- contact ----------------------------------------------------------------

ContactModel::ContactModel(int n, int d) : n_(n), d_(d) {
    if (n < 1 || d < 1) throw std::invalid_argument("ContactModel: n, d >= 1 required");
}

std::vector<std::string> ContactModel::var_names() const {
    std::vector<std::string> names;
    for (int i = 1; i <= n_; ++i) names.push_back("q" + std::to_string(i));
    for (int i = 1; i <= n_; ++i) names.push_back("p" + std::to_string(i));
    names.push_back("z");
    return names;
}

std::vector<Poly> ContactModel::field_product(const std::vector<Poly>& s,
                                              const std::vector<Poly>& t) const {
    // (f R)(g R) = f <dg, R> R = f dg/dz R
    return {s[0] * t[0].derivative(z_var())};
}

Poly ContactModel::anchor_apply(const std::vector<Poly>& s, const Poly& f) const {
    return s[0] * f.derivative(z_var());
}

std::vector<std::vector<Poly>> ContactModel::algebra_basis() const {
    // the Reeb subalgebra: constant multiples of R only
    return {{Poly::constant(nvars(), Scalar(1))}};
}

std::vector<Mono> ContactModel::module_basis() const {
    return monomials_up_to(nvars(), 0, d_);
}

}  // namespace kvh
