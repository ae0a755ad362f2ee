#include "kvh/multidiff.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kvh {

bool mono_leq(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_add(const Mono& a, const Mono& b) {
    Mono out(a);
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<uint8_t>(a[i] + b[i]);
    return out;
}

Mono mono_sub(const Mono& a, const Mono& b) {
    Mono out(a);
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<uint8_t>(a[i] - b[i]);
    return out;
}

Scalar mono_binomial(const Mono& a, const Mono& b) {
    long prod = 1;
    for (size_t v = 0; v < a.size(); ++v) {
        long n = a[v], k = b[v], c = 1;
        for (long i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        prod *= c;
    }
    return Scalar(prod);
}

void mono_splits(const Mono& beta, int parts,
                 const std::function<void(const std::vector<Mono>&, const Scalar&)>& emit) {
    // peel one part at a time: beta = mu + rest, weight binom(beta, mu)
    std::vector<Mono> cur;
    std::function<void(const Mono&, int, Scalar)> rec = [&](const Mono& left, int remaining,
                                                            Scalar w) {
        if (remaining == 1) {
            cur.push_back(left);
            emit(cur, w);
            cur.pop_back();
            return;
        }
        // enumerate mu <= left
        Mono mu(left.size(), 0);
        std::function<void(size_t)> loop = [&](size_t v) {
            if (v == left.size()) {
                cur.push_back(mu);
                rec(mono_sub(left, mu), remaining - 1, w * mono_binomial(left, mu));
                cur.pop_back();
                return;
            }
            for (uint8_t e = 0; e <= left[v]; ++e) {
                mu[v] = e;
                loop(v + 1);
            }
            mu[v] = 0;
        };
        loop(0);
    };
    rec(beta, parts, Scalar(1));
}

void MultiDiffChain::add_term(const JetKey& key, const Poly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(key, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly MultiDiffChain::eval(const std::vector<Poly>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("MultiDiffChain::eval: arity mismatch");
    Poly out(nvars_);
    for (auto& [key, c] : terms_) {
        Poly term = c;
        for (int i = 0; i < arity_ && !term.is_zero(); ++i) term = term * args[i].derivative(key[i]);
        out += term;
    }
    return out;
}

MultiDiffChain MultiDiffChain::scaled(const Scalar& c) const {
    MultiDiffChain out(arity_, nvars_);
    if (c.is_zero()) return out;
    for (auto& [k, p] : terms_) out.terms_[k] = c * p;
    return out;
}

MultiDiffChain& MultiDiffChain::operator+=(const MultiDiffChain& o) {
    if (terms_.empty() && arity_ == 0) {
        arity_ = o.arity_;
        nvars_ = o.nvars_;
    }
    for (auto& [k, p] : o.terms_) add_term(k, p);
    return *this;
}

MultiDiffChain MultiDiffChain::permuted(const std::vector<int>& p) const {
    MultiDiffChain out(arity_, nvars_);
    for (auto& [k, c] : terms_) {
        // this reads slot i from args[p[i]]: new key at p[i] is k[i]
        JetKey nk(arity_);
        for (int i = 0; i < arity_; ++i) nk[p[i]] = k[i];
        out.add_term(nk, c);
    }
    return out;
}

std::vector<int> MultiDiffChain::jet_type(const JetKey& k) {
    std::vector<int> t;
    t.reserve(k.size());
    for (auto& m : k) t.push_back(mono_degree(m));
    return t;
}

std::map<std::vector<int>, MultiDiffChain> MultiDiffChain::jet_decompose() const {
    std::map<std::vector<int>, MultiDiffChain> out;
    for (auto& [k, c] : terms_) {
        auto t = jet_type(k);
        auto [it, fresh] = out.try_emplace(t, MultiDiffChain(arity_, nvars_));
        it->second.add_term(k, c);
    }
    return out;
}

MultiDiffChain MultiDiffChain::jet_component(const std::vector<int>& I) const {
    MultiDiffChain out(arity_, nvars_);
    for (auto& [k, c] : terms_)
        if (jet_type(k) == I) out.add_term(k, c);
    return out;
}

int MultiDiffChain::order() const {
    int k = 0;
    for (auto& [key, c] : terms_)
        for (auto& m : key) k = std::max(k, mono_degree(m));
    return k;
}

MultiDiffChain MultiDiffChain::symbol() const {
    return jet_component(std::vector<int>(arity_, order()));
}

bool MultiDiffChain::is_homogeneous() const {
    int deg = -1;
    for (auto& [key, c] : terms_) {
        int d = 0;
        for (auto& m : key) d += mono_degree(m);
        if (deg < 0) deg = d;
        if (d != deg) return false;
    }
    return true;
}

MultiDiffChain MultiDiffChain::insert_mult_slot(int pos) const {
    MultiDiffChain out(arity_ + 1, nvars_);
    for (auto& [k, c] : terms_) {
        JetKey nk(k);
        nk.insert(nk.begin() + pos, Mono(nvars_, 0));
        out.add_term(nk, c);
    }
    return out;
}

MultiDiffChain MultiDiffChain::right_mult_slot() const { return insert_mult_slot(arity_); }

MultiDiffChain MultiDiffChain::expand_product_slot(int slot) const {
    MultiDiffChain out(arity_ + 1, nvars_);
    for (auto& [k, c] : terms_) {
        const Mono& alpha = k[slot];
        Mono mu(nvars_, 0);
        std::function<void(size_t)> loop = [&](size_t v) {
            if (v == mu.size()) {
                JetKey nk;
                nk.reserve(arity_ + 1);
                for (int i = 0; i < slot; ++i) nk.push_back(k[i]);
                nk.push_back(mu);
                nk.push_back(mono_sub(alpha, mu));
                for (int i = slot + 1; i < arity_; ++i) nk.push_back(k[i]);
                out.add_term(nk, mono_binomial(alpha, mu) * c);
                return;
            }
            for (uint8_t e = 0; e <= alpha[v]; ++e) {
                mu[v] = e;
                loop(v + 1);
            }
            mu[v] = 0;
        };
        loop(0);
    }
    return out;
}

MultiDiffChain MultiDiffChain::plug(int slot, const MultiDiffChain& inner) const {
    const int r = inner.arity_;
    MultiDiffChain out(arity_ - 1 + r, nvars_);
    for (auto& [k, c] : terms_) {
        const Mono& beta = k[slot];
        for (auto& [ik, ic] : inner.terms_) {
            // d^beta (ic * prod_j d^{ik_j} g_j): split beta over the
            // coefficient and the r arguments.
            mono_splits(beta, r + 1, [&](const std::vector<Mono>& parts, const Scalar& w) {
                Poly coeff = w * (c * ic.derivative(parts[0]));
                if (coeff.is_zero()) return;
                JetKey nk;
                nk.reserve(out.arity_);
                for (int i = 0; i < slot; ++i) nk.push_back(k[i]);
                for (int j = 0; j < r; ++j) nk.push_back(mono_add(ik[j], parts[j + 1]));
                for (int i = slot + 1; i < arity_; ++i) nk.push_back(k[i]);
                out.add_term(nk, coeff);
            });
        }
    }
    return out;
}

MultiDiffChain MultiDiffChain::anchor_into_slot(int slot, const std::vector<Poly>& S,
                                                const std::vector<int>& dirs) const {
    MultiDiffChain out(arity_, nvars_);
    for (auto& [k, c] : terms_) {
        const Mono& alpha = k[slot];
        for (size_t comp = 0; comp < S.size(); ++comp) {
            if (S[comp].is_zero()) continue;
            Mono e(nvars_, 0);
            e[dirs[comp]] = 1;
            // d^alpha (S_comp * d_{dir} g) = sum_{mu<=alpha} C(alpha,mu)
            //   d^mu S_comp * d^{alpha-mu+e} g
            Mono mu(nvars_, 0);
            std::function<void(size_t)> loop = [&](size_t v) {
                if (v == mu.size()) {
                    Poly coeff = mono_binomial(alpha, mu) * (c * S[comp].derivative(mu));
                    if (coeff.is_zero()) return;
                    JetKey nk(k);
                    nk[slot] = mono_add(mono_sub(alpha, mu), e);
                    out.add_term(nk, coeff);
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
    return out;
}

MultiDiffChain MultiDiffChain::anchor_on_value(const std::vector<Poly>& S,
                                               const std::vector<int>& dirs) const {
    MultiDiffChain out(arity_, nvars_);
    for (auto& [k, c] : terms_) {
        for (size_t comp = 0; comp < S.size(); ++comp) {
            if (S[comp].is_zero()) continue;
            const int dir = dirs[comp];
            // S_comp d_dir (c prod d^{alpha_i} f_i)
            out.add_term(k, S[comp] * c.derivative(dir));
            for (int i = 0; i < arity_; ++i) {
                JetKey nk(k);
                Mono e(nvars_, 0);
                e[dir] = 1;
                nk[i] = mono_add(nk[i], e);
                out.add_term(nk, S[comp] * c);
            }
        }
    }
    return out;
}

}  // namespace kvh
