#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kvh/scalar.hpp"

namespace kvh {

// Exponent vector of a monomial; fixed variable count per context.
using Mono = std::vector<uint8_t>;

inline int mono_degree(const Mono& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

// Sparse multivariate polynomial over Scalar with exact arithmetic.
// Arithmetic never truncates; truncated(d) applies a degree cap and reports
// whether terms were discarded, so callers can demand loss-free runs.
class Poly {
public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, Scalar c) {
        Poly p(nvars);
        if (!c.is_zero()) p.terms_[Mono(nvars, 0)] = std::move(c);
        return p;
    }
    static Poly variable(int nvars, int i, int power = 1) {
        Poly p(nvars);
        Mono m(nvars, 0);
        m[i] = static_cast<uint8_t>(power);
        p.terms_[std::move(m)] = Scalar(1);
        return p;
    }
    static Poly monomial(int nvars, Mono m, Scalar c = Scalar(1)) {
        Poly p(nvars);
        if (!c.is_zero()) p.terms_[std::move(m)] = std::move(c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;  // -1 for the zero polynomial
    }
    const std::map<Mono, Scalar>& terms() const { return terms_; }

    Scalar coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }
    Scalar constant_term() const { return coeff(Mono(nvars_, 0)); }

    void add_term(const Mono& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly p(nvars_);
        for (auto& [m, c] : terms_) p.terms_[m] = -c;
        return p;
    }
    Poly& operator+=(const Poly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly p(a.nvars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                Mono m(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                p.add_term(m, ca * cb);
            }
        return p;
    }
    friend Poly operator*(const Scalar& c, const Poly& a) {
        Poly p(a.nvars_);
        if (c.is_zero()) return p;
        for (auto& [m, s] : a.terms_) p.terms_[m] = c * s;
        return p;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative(int var) const {
        Poly p(nvars_);
        for (auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Mono d = m;
            d[var] -= 1;
            p.add_term(d, Scalar(static_cast<long>(m[var])) * c);
        }
        return p;
    }

    // Repeated derivative prescribed by an exponent vector.
    Poly derivative(const Mono& alpha) const {
        Poly p = *this;
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < alpha[v]; ++k) p = p.derivative(v);
        return p;
    }

    // Substitute variables: var i -> subs[i]. Exact composition.
    Poly compose(const std::vector<Poly>& subs) const;

    // Drop terms of total degree > d; sets *lost when something was dropped.
    Poly truncated(int d, bool* lost = nullptr) const {
        Poly p(nvars_);
        for (auto& [m, c] : terms_) {
            if (mono_degree(m) <= d)
                p.terms_[m] = c;
            else if (lost)
                *lost = true;
        }
        return p;
    }

    // Keep only the homogeneous part of total degree d.
    Poly homogeneous_part(int d) const {
        Poly p(nvars_);
        for (auto& [m, c] : terms_)
            if (mono_degree(m) == d) p.terms_[m] = c;
        return p;
    }

    std::string str(const std::vector<std::string>& var_names) const;

private:
    int nvars_;
    std::map<Mono, Scalar> terms_;
};

// All monomials in nvars variables of total degree between lo and hi,
// in graded lexicographic order. The workhorse for spanning sets and for
// model bases.
std::vector<Mono> monomials_up_to(int nvars, int lo, int hi);

}  // namespace kvh
