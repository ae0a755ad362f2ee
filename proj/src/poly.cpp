#include "kvh/poly.hpp"

#include <functional>

namespace kvh {

Poly Poly::compose(const std::vector<Poly>& subs) const {
    int out_vars = subs.empty() ? nvars_ : subs[0].nvars();
    Poly out(out_vars);
    for (auto& [m, c] : terms_) {
        Poly term = Poly::constant(out_vars, c);
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < m[v]; ++k) term = term * subs[v];
        out += term;
    }
    return out;
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::string mono;
        for (int v = 0; v < nvars_; ++v) {
            if (m[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_names[v];
            if (m[v] > 1) mono += "^" + std::to_string(m[v]);
        }
        if (mono.empty()) {
            s += c.str();
        } else if (c.is_one()) {
            s += mono;
        } else {
            s += "(" + c.str() + ")*" + mono;
        }
    }
    return s;
}

std::vector<Mono> monomials_up_to(int nvars, int lo, int hi) {
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    // graded order: enumerate exact-degree slices, lex within a slice
    std::function<void(int, int)> slice = [&](int var, int left) {
        if (var == nvars - 1) {
            cur[var] = static_cast<uint8_t>(left);
            out.push_back(cur);
            cur[var] = 0;
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[var] = static_cast<uint8_t>(e);
            slice(var + 1, left - e);
        }
        cur[var] = 0;
    };
    for (int d = lo; d <= hi; ++d) {
        if (nvars == 0) {
            if (d == 0) out.push_back(cur);
        } else {
            slice(0, d);
        }
    }
    return out;
}

}  // namespace kvh
