#include "kvh/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kvh {

SparseVec sparse_normalize(SparseVec v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& [i, s] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += s;
        else
            out.emplace_back(i, s);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& p) { return p.second.is_zero(); }),
              out.end());
    return out;
}

SparseVec sparse_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y) {
    SparseVec out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            Scalar v = a * y[j].second;
            if (!v.is_zero()) out.emplace_back(y[j].first, std::move(v));
            ++j;
        } else {
            Scalar v = x[i].second + a * y[j].second;
            if (!v.is_zero()) out.emplace_back(x[i].first, std::move(v));
            ++i, ++j;
        }
    }
    return out;
}

std::vector<Scalar> sparse_to_dense(const SparseVec& v, int n) {
    std::vector<Scalar> out(n);
    for (auto& [i, s] : v) out[i] = s;
    return out;
}

SparseVec dense_to_sparse(const std::vector<Scalar>& v) {
    SparseVec out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i]);
    return out;
}

void Matrix::set(int r, int c, Scalar v) {
    auto& col = cols_[c];
    for (auto it = col.begin(); it != col.end(); ++it) {
        if (it->first == r) {
            if (v.is_zero())
                col.erase(it);
            else
                it->second = std::move(v);
            return;
        }
        if (it->first > r) {
            if (!v.is_zero()) col.insert(it, {r, std::move(v)});
            return;
        }
    }
    if (!v.is_zero()) col.emplace_back(r, std::move(v));
}

Scalar Matrix::get(int r, int c) const {
    for (auto& [i, s] : cols_[c])
        if (i == r) return s;
    return Scalar();
}

void Matrix::add(int r, int c, const Scalar& v) {
    if (v.is_zero()) return;
    Scalar cur = get(r, c);
    cur += v;
    set(r, c, std::move(cur));
}

Matrix Matrix::transpose() const {
    Matrix t(cols(), rows_);
    for (int c = 0; c < cols(); ++c)
        for (auto& [r, s] : cols_[c]) t.cols_[r].emplace_back(c, s);
    for (auto& col : t.cols_)
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return t;
}

Matrix Matrix::multiply(const Matrix& rhs) const {
    if (cols() != rhs.rows()) throw std::invalid_argument("Matrix::multiply: shape mismatch");
    Matrix out(rows_, rhs.cols());
    for (int c = 0; c < rhs.cols(); ++c) {
        std::map<int, Scalar> acc;
        for (auto& [k, v] : rhs.cols_[c])
            for (auto& [r, w] : cols_[k]) acc[r] += v * w;
        SparseVec col;
        for (auto& [r, s] : acc)
            if (!s.is_zero()) col.emplace_back(r, s);
        out.cols_[c] = std::move(col);
    }
    return out;
}

bool Matrix::is_zero() const {
    for (auto& col : cols_)
        if (!col.empty()) return false;
    return true;
}

SparseVec Matrix::apply(const SparseVec& x) const {
    std::map<int, Scalar> acc;
    for (auto& [c, v] : x)
        for (auto& [r, w] : cols_[c]) acc[r] += v * w;
    SparseVec out;
    for (auto& [r, s] : acc)
        if (!s.is_zero()) out.emplace_back(r, s);
    return out;
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.cols_[i].emplace_back(i, Scalar(1));
    return m;
}

Matrix Matrix::from_columns(int rows, const std::vector<SparseVec>& cols) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) m.cols_[c] = sparse_normalize(cols[c]);
    return m;
}

namespace {

// Scale a sparse row to a primitive Gaussian-integer row with the leading
// entry's real part (or imaginary part when real is zero) positive. Keeps
// entry growth bounded through the cross-multiplication elimination.
void strip_content(SparseVec& row) {
    if (row.empty()) return;
    mpz_class den_lcm(1);
    for (auto& [i, s] : row) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), s.re().get_den_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), l.get_mpz_t(), s.im().get_den_mpz_t());
    }
    mpz_class num_gcd(0);
    for (auto& [i, s] : row) {
        mpz_class nre = s.re().get_num() * (den_lcm / s.re().get_den());
        mpz_class nim = s.im().get_num() * (den_lcm / s.im().get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), nre.get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), nim.get_mpz_t());
    }
    if (num_gcd == 0) return;
    Scalar factor{mpq_class(den_lcm, num_gcd)};
    const Scalar& lead = row.front().second;
    int sign = sgn(lead.re()) != 0 ? sgn(lead.re()) : sgn(lead.im());
    if (sign < 0) factor = -factor;
    for (auto& [i, s] : row) s *= factor;
}

struct Workspace {
    std::vector<SparseVec> rows;
    int cols = 0;
};

// Fraction-free elimination. Returns echelon rows over the first `pivot_limit`
// columns; entries beyond that (augmented part) are carried along.
Echelon eliminate(Workspace ws, int pivot_limit) {
    Echelon ech;
    ech.cols = pivot_limit;
    ech.is_pivot_col.assign(pivot_limit, false);

    for (auto& r : ws.rows) strip_content(r);

    // Active rows indexed into ws.rows; done rows move to ech.
    std::vector<int> active(ws.rows.size());
    for (size_t i = 0; i < ws.rows.size(); ++i) active[i] = static_cast<int>(i);

    for (int col = 0; col < pivot_limit && !active.empty(); ++col) {
        int best = -1;
        size_t best_bits = 0;
        for (size_t k = 0; k < active.size(); ++k) {
            const SparseVec& r = ws.rows[active[k]];
            if (!r.empty() && r.front().first == col) {
                size_t bits = r.front().second.bit_size();
                if (best < 0 || bits < best_bits) {
                    best = static_cast<int>(k);
                    best_bits = bits;
                }
            }
        }
        if (best < 0) continue;

        int prow = active[best];
        active.erase(active.begin() + best);
        const SparseVec pivot_row = ws.rows[prow];
        const Scalar pivot = pivot_row.front().second;

        for (int idx : active) {
            SparseVec& r = ws.rows[idx];
            if (r.empty() || r.front().first != col) continue;
            Scalar c = r.front().second;
            // r <- pivot*r - c*pivot_row   (fraction-free cross-multiply)
            SparseVec scaled;
            scaled.reserve(r.size());
            for (auto& [i, s] : r) scaled.emplace_back(i, pivot * s);
            r = sparse_axpy(scaled, -c, pivot_row);
            strip_content(r);
        }

        ech.pivot_col.push_back(col);
        ech.rows.push_back(pivot_row);
        ech.is_pivot_col[col] = true;
        ++ech.rank;
    }
    return ech;
}

Workspace rows_of(const Matrix& m) {
    Workspace ws;
    ws.cols = m.cols();
    std::vector<SparseVec> rows(m.rows());
    for (int c = 0; c < m.cols(); ++c)
        for (auto& [r, s] : m.column(c)) rows[r].emplace_back(c, s);
    for (auto& r : rows)
        if (!r.empty()) ws.rows.push_back(std::move(r));
    return ws;
}

}  // namespace

Echelon echelonize(const Matrix& m) { return eliminate(rows_of(m), m.cols()); }

int rank(const Matrix& m) { return echelonize(m).rank; }

namespace {

// Back-substitute one kernel vector for free column `fc` from echelon rows.
SparseVec kernel_vector(const Echelon& ech, int fc) {
    std::map<int, Scalar> x;
    x[fc] = Scalar(1);
    for (int k = ech.rank - 1; k >= 0; --k) {
        const SparseVec& row = ech.rows[k];
        int pc = ech.pivot_col[k];
        Scalar acc;
        for (auto& [j, s] : row) {
            if (j == pc) continue;
            auto it = x.find(j);
            if (it != x.end()) acc += s * it->second;
        }
        if (!acc.is_zero()) x[pc] = -acc / row.front().second;
    }
    SparseVec v;
    for (auto& [i, s] : x)
        if (!s.is_zero()) v.emplace_back(i, s);
    strip_content(v);
    return v;
}

}  // namespace

SubspaceBasis kernel_basis(const Matrix& m) {
    Echelon ech = echelonize(m);
    SubspaceBasis basis;
    basis.ambient = m.cols();
    for (int c = 0; c < m.cols(); ++c)
        if (!ech.is_pivot_col[c]) basis.vectors.push_back(kernel_vector(ech, c));
    return basis;
}

std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b) {
    const int n = m.cols();
    // Eliminate the augmented matrix [m | b]; a pivot landing in the b column
    // means rank(m|b) > rank(m), i.e. no solution.
    Workspace ws;
    std::vector<SparseVec> rows(m.rows());
    for (int c = 0; c < n; ++c)
        for (auto& [r, s] : m.column(c)) rows[r].emplace_back(c, s);
    for (auto& [r, s] : b) rows[r].emplace_back(n, s);
    for (auto& r : rows)
        if (!r.empty()) ws.rows.push_back(sparse_normalize(std::move(r)));
    ws.cols = n + 1;
    Echelon ech = eliminate(std::move(ws), n + 1);
    if (!ech.pivot_col.empty() && ech.is_pivot_col[n]) return std::nullopt;

    // Back substitution with free variables set to zero. Each echelon row
    // reads  diag*x[pc] + sum_j row[j]*x[j] = row[n]  (column n holds b).
    std::map<int, Scalar> x;
    for (int k = ech.rank - 1; k >= 0; --k) {
        const SparseVec& row = ech.rows[k];
        int pc = ech.pivot_col[k];
        Scalar diag, others, bval;
        for (auto& [j, s] : row) {
            if (j == pc) {
                diag = s;
            } else if (j == n) {
                bval = s;
            } else {
                auto it = x.find(j);
                if (it != x.end()) others += s * it->second;
            }
        }
        Scalar v = (bval - others) / diag;
        if (!v.is_zero()) x[pc] = v;
    }
    SparseVec out;
    for (auto& [i, s] : x) out.emplace_back(i, s);
    return out;
}

std::vector<int> independent_columns(const Matrix& m) {
    // Pivot columns of the row echelon form are a maximal independent set,
    // matching the greedy left-to-right choice.
    Echelon ech = echelonize(m);
    return ech.pivot_col;
}

int quotient_dim(const SubspaceBasis& cycles, const SubspaceBasis& boundaries) {
    Matrix z = Matrix::from_columns(cycles.ambient, cycles.vectors);
    for (const auto& b : boundaries.vectors) {
        if (!solve(z, b))
            throw std::invalid_argument("quotient_dim: boundary outside cycle span; witness present");
    }
    return cycles.dim() - boundaries.dim();
}

std::vector<int> extend_to_basis(int ambient, const std::vector<SparseVec>& sub,
                                 const std::vector<SparseVec>& space) {
    std::vector<SparseVec> cols = sub;
    cols.insert(cols.end(), space.begin(), space.end());
    Matrix joint = Matrix::from_columns(ambient, cols);
    std::vector<int> picked;
    for (int c : independent_columns(joint))
        if (c >= static_cast<int>(sub.size())) picked.push_back(c - static_cast<int>(sub.size()));
    return picked;
}

}  // namespace kvh
