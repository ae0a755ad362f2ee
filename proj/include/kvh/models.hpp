#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kvh/kv_complex.hpp"
#include "kvh/kv_core.hpp"
#include "kvh/poly.hpp"

namespace kvh {

// Polynomial vector field: one coefficient per ambient variable.
using PolyVectorField = std::vector<Poly>;

// Flat product of formal vector fields: XX' = sum_j (sum_i X_i dX'_j/dx_i) d/dx_j.
PolyVectorField formal_vf_product(const PolyVectorField& x, const PolyVectorField& y);

// The literal printed variant (output direction d/dx_i); kept for comparison,
// not KV. Selected by the product-reading configuration switch.
PolyVectorField formal_vf_product_literal(const PolyVectorField& x, const PolyVectorField& y);

// Section of the split algebra G = A (+) W over a model: field components
// (over the model's designated directions) plus a function part.
struct GSec {
    std::vector<Poly> s;
    Poly f;

    bool is_zero() const {
        for (auto& c : s)
            if (!c.is_zero()) return false;
        return f.is_zero();
    }
};

// Finite, exact polynomial model of a KV algebroid. Sections multiply by the
// split product (ss', ff' + a(s) f'); reduce() maps results back into the
// model's finite span (the quotient/truncation), flagging discarded terms.
class AlgebroidModel {
public:
    virtual ~AlgebroidModel() = default;

    virtual std::string name() const = 0;
    virtual int nvars() const = 0;
    virtual std::vector<std::string> var_names() const = 0;
    virtual int field_components() const = 0;
    virtual int degree_bound() const = 0;

    // ss' on field components (exact, untruncated).
    virtual std::vector<Poly> field_product(const std::vector<Poly>& s,
                                            const std::vector<Poly>& t) const = 0;
    // a(s) f (exact).
    virtual Poly anchor_apply(const std::vector<Poly>& s, const Poly& f) const = 0;

    // Finite bases. Algebra basis elements are fields; module basis elements
    // are monomials of degree <= d.
    virtual std::vector<std::vector<Poly>> algebra_basis() const = 0;
    virtual std::vector<Mono> module_basis() const = 0;

    // Split product, exact.
    GSec mul(const GSec& x, const GSec& y) const;

    // Module actions of G on W (exact).
    Poly act_left(const GSec& x, const Poly& w) const;   // x . w = f w + a(s) w
    Poly act_right(const Poly& w, const GSec& x) const;  // w . x = w f

    Poly reduce_f(const Poly& f, bool* lost = nullptr) const;
    std::vector<Poly> reduce_s(const std::vector<Poly>& s, bool* lost = nullptr) const;

    GSec section_A(int basis_index) const;
    GSec section_W(const Mono& m) const;
    GSec section_W(const Poly& f) const;

    // All monomial W-sections of degree lo..hi and all basis A-sections.
    std::vector<GSec> span_W(int lo, int hi) const;
    std::vector<GSec> span_A() const;

    // Structure constants of the finite model (asserts closure of the bases
    // under products; `reduced` reports whether reduction discarded terms,
    // i.e. whether the finite model is a truncation rather than an exact
    // subalgebra of the polynomial model).
    SplitAlgebra to_finite(bool* reduced = nullptr) const;

    // Coordinates of a function in the module monomial basis; throws if f
    // has terms outside the basis.
    SparseVec w_coords(const Poly& f) const;
    // Coordinates of a section in the A (+) W basis of the finite model.
    SparseVec g_coords(const GSec& x) const;
};

// W = F[x]/(x^{d+1}), A = (x) W d/dx; an exact quotient model.
class JetLineModel : public AlgebroidModel {
public:
    explicit JetLineModel(int depth);

    std::string name() const override { return "jet-line-d" + std::to_string(d_); }
    int nvars() const override { return 1; }
    std::vector<std::string> var_names() const override { return {"x"}; }
    int field_components() const override { return 1; }
    int degree_bound() const override { return d_; }

    std::vector<Poly> field_product(const std::vector<Poly>& s,
                                    const std::vector<Poly>& t) const override;
    Poly anchor_apply(const std::vector<Poly>& s, const Poly& f) const override;
    std::vector<std::vector<Poly>> algebra_basis() const override;
    std::vector<Mono> module_basis() const override;

private:
    int d_;
};

// Cotangent-space model in coordinates (q_1..q_m, p_1..p_m): W is the degree
// <= d polynomial quotient, A the vertical fields sum S_i(p) d/dp_i whose
// coefficients are q-independent and vanish at p = 0. The restriction keeps
// the truncated model an exact quotient and makes the horizontal lifts of
// base Poisson tensors boundary-closed.
class CotangentModel : public AlgebroidModel {
public:
    CotangentModel(int m, int d);

    std::string name() const override {
        return "cotangent-m" + std::to_string(m_) + "-d" + std::to_string(d_);
    }
    int nvars() const override { return 2 * m_; }
    std::vector<std::string> var_names() const override;
    int field_components() const override { return m_; }
    int degree_bound() const override { return d_; }
    int base_dim() const { return m_; }

    int q_var(int i) const { return i; }
    int p_var(int i) const { return m_ + i; }

    std::vector<Poly> field_product(const std::vector<Poly>& s,
                                    const std::vector<Poly>& t) const override;
    Poly anchor_apply(const std::vector<Poly>& s, const Poly& f) const override;
    std::vector<std::vector<Poly>> algebra_basis() const override;
    std::vector<Mono> module_basis() const override;

    // General vertical monomial fields x^mu d/dp_k (mu over q and p, degree
    // 1..deg); wider than the model algebra, used by comparison checks.
    std::vector<std::vector<Poly>> general_vertical_fields(int max_deg) const;

    // i(ss')omega = L_s i(s') omega against the Liouville symplectic form,
    // compared with the flat field product; s, s' vertical fields.
    Verdict lagrangian_product_check(const std::vector<Poly>& s,
                                     const std::vector<Poly>& t) const;

private:
    int m_, d_;
};

// Reeb model on (q_1..q_n, p_1..p_n, z): A = F . R with R = d/dz, W the
// degree <= d quotient. The finite structure constants use truncation
// semantics (the z-derivative does not descend to the quotient exactly).
class ContactModel : public AlgebroidModel {
public:
    ContactModel(int n, int d);

    std::string name() const override {
        return "contact-n" + std::to_string(n_) + "-d" + std::to_string(d_);
    }
    int nvars() const override { return 2 * n_ + 1; }
    std::vector<std::string> var_names() const override;
    int field_components() const override { return 1; }
    int degree_bound() const override { return d_; }
    int contact_n() const { return n_; }

    int q_var(int i) const { return i; }
    int p_var(int i) const { return n_ + i; }
    int z_var() const { return 2 * n_; }

    std::vector<Poly> field_product(const std::vector<Poly>& s,
                                    const std::vector<Poly>& t) const override;
    Poly anchor_apply(const std::vector<Poly>& s, const Poly& f) const override;
    std::vector<std::vector<Poly>> algebra_basis() const override;
    std::vector<Mono> module_basis() const override;

private:
    int n_, d_;
};

}  // namespace kvh
