#pragma once

// Smith normal form over Z.
//
// Two engines. The reference (DenseSmith) pivots on the least absolute value,
// row-major tie break; it is simple but entries can grow quickly, so it is
// only used on small blocks. The echelon engine alternates row and column
// echelon forms with reduced off-pivot entries until the matrix is diagonal,
// then repairs divisibility pairwise; it keeps entries and transforms small.
//
// invariant_factors has two independent front ends used to cross-check each
// other on large inputs:
//   SnfPath::sparse  - unit-pivot sparse elimination, then SNF of the rest
//   SnfPath::lattice - echelon lattice basis of the row space, then SNF

#include "rbw/lattice.hpp"
#include "rbw/sparse.hpp"

#include <numeric>
#include <optional>

namespace rbw {

struct SmithResult {
    std::vector<Integer> diagonal;  // length min(rows, cols), d_i | d_{i+1}, zeros last
    DenseMatrix U;                  // rows x rows, empty if not requested
    DenseMatrix V;                  // cols x cols, empty if not requested
};

namespace detail {

inline DenseMatrix dense_identity(std::size_t n) {
    DenseMatrix I(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

class DenseSmith {
  public:
    DenseSmith(DenseMatrix a, std::size_t cols, bool transforms) : A_(std::move(a)), m_(A_.size()), n_(cols), tr_(transforms) {
        if (tr_) {
            U_ = dense_identity(m_);
            V_ = dense_identity(n_);
        }
    }

    SmithResult run() {
        const std::size_t r = std::min(m_, n_);
        for (std::size_t t = 0; t < r; ++t) {
            auto piv = least_entry(t, t, m_, n_);
            if (!piv) break;
            place(t, piv->first, piv->second);
            while (true) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m_; ++i) {
                    if (A_[i][t] == 0) continue;
                    Integer q = floor_div(A_[i][t], A_[t][t]);
                    row_axpy(i, -q, t);
                    if (A_[i][t] != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < n_; ++j) {
                    if (A_[t][j] == 0) continue;
                    Integer q = floor_div(A_[t][j], A_[t][t]);
                    col_axpy(j, -q, t);
                    if (A_[t][j] != 0) clean = false;
                }
                if (!clean) {
                    // A remainder smaller than the pivot survives in row or column t.
                    auto p2 = least_in_cross(t);
                    place(t, p2.first, p2.second);
                    continue;
                }
                auto bad = non_divisible(t);
                if (!bad) break;
                row_axpy(t, Integer(1), *bad);
            }
            if (A_[t][t] < 0) row_scale_neg(t);
        }
        SmithResult res;
        res.diagonal.assign(r, 0);
        for (std::size_t i = 0; i < r; ++i) res.diagonal[i] = A_[i][i];
        if (tr_) {
            res.U = std::move(U_);
            res.V = std::move(V_);
        }
        return res;
    }

  private:
    std::optional<std::pair<std::size_t, std::size_t>> least_entry(std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer bv;
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) {
                if (A_[i][j] == 0) continue;
                if (!best || cmpabs(A_[i][j], bv) < 0) {
                    best = {i, j};
                    bv = A_[i][j];
                    if (bv == 1 || bv == -1) return best;
                }
            }
        return best;
    }

    std::pair<std::size_t, std::size_t> least_in_cross(std::size_t t) const {
        std::pair<std::size_t, std::size_t> best{t, t};
        Integer bv = A_[t][t];
        for (std::size_t i = t; i < m_; ++i)
            if (A_[i][t] != 0 && cmpabs(A_[i][t], bv) < 0) {
                best = {i, t};
                bv = A_[i][t];
            }
        for (std::size_t j = t; j < n_; ++j)
            if (A_[t][j] != 0 && cmpabs(A_[t][j], bv) < 0) {
                best = {t, j};
                bv = A_[t][j];
            }
        return best;
    }

    std::optional<std::size_t> non_divisible(std::size_t t) const {
        for (std::size_t i = t + 1; i < m_; ++i)
            for (std::size_t j = t + 1; j < n_; ++j)
                if (!divides(A_[t][t], A_[i][j])) return i;
        return std::nullopt;
    }

    void place(std::size_t t, std::size_t i, std::size_t j) {
        if (i != t) {
            std::swap(A_[i], A_[t]);
            if (tr_) std::swap(U_[i], U_[t]);
        }
        if (j != t) {
            for (auto& row : A_) std::swap(row[j], row[t]);
            if (tr_)
                for (auto& row : V_) std::swap(row[j], row[t]);
        }
    }

    // row_i += q * row_k
    void row_axpy(std::size_t i, const Integer& q, std::size_t k) {
        for (std::size_t j = 0; j < n_; ++j)
            if (A_[k][j] != 0) A_[i][j] += q * A_[k][j];
        if (tr_)
            for (std::size_t j = 0; j < m_; ++j)
                if (U_[k][j] != 0) U_[i][j] += q * U_[k][j];
    }

    // col_j += q * col_k
    void col_axpy(std::size_t j, const Integer& q, std::size_t k) {
        for (std::size_t i = 0; i < m_; ++i)
            if (A_[i][k] != 0) A_[i][j] += q * A_[i][k];
        if (tr_)
            for (std::size_t i = 0; i < n_; ++i)
                if (V_[i][k] != 0) V_[i][j] += q * V_[i][k];
    }

    void row_scale_neg(std::size_t t) {
        for (auto& x : A_[t]) x = -x;
        if (tr_)
            for (auto& x : U_[t]) x = -x;
    }

    DenseMatrix A_, U_, V_;
    std::size_t m_, n_;
    bool tr_;
};

}  // namespace detail

namespace detail {

inline std::vector<SparseRow> transpose_rows(const std::vector<SparseRow>& rows, std::size_t cols) {
    std::vector<SparseRow> t(cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, v] : rows[i]) t[c].emplace_back(static_cast<std::uint32_t>(i), v);
    return t;
}

inline std::vector<SparseRow> identity_rows(std::size_t n) {
    std::vector<SparseRow> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = {{static_cast<std::uint32_t>(i), Integer(1)}};
    return id;
}

struct EchelonStep {
    std::vector<SparseRow> reduced;    // echelon rows (all m rows when tracking)
    std::vector<SparseRow> transform;  // T with T * rows = reduced
};

inline EchelonStep echelon_step(const std::vector<SparseRow>& rows, std::size_t cols, bool track) {
    const std::size_t m = rows.size();
    Lattice L(cols + (track ? m : 0));
    for (std::size_t i = 0; i < m; ++i) {
        SparseRow r = rows[i];
        if (track) r.emplace_back(static_cast<std::uint32_t>(cols + i), Integer(1));
        L.insert(std::move(r));
    }
    EchelonStep out;
    for (auto& b : L.basis()) {
        SparseRow left, right;
        for (auto& [c, v] : b) {
            if (c < cols) left.emplace_back(c, std::move(v));
            else right.emplace_back(static_cast<std::uint32_t>(c - cols), std::move(v));
        }
        if (!track && left.empty()) continue;
        out.reduced.push_back(std::move(left));
        if (track) out.transform.push_back(std::move(right));
    }
    return out;
}

inline bool diagonal_pattern(const std::vector<SparseRow>& rows, std::size_t cols) {
    std::vector<char> used(cols, 0);
    for (const auto& r : rows) {
        if (r.size() > 1) return false;
        if (r.size() == 1) {
            if (used[r[0].first]) return false;
            used[r[0].first] = 1;
        }
    }
    return true;
}

inline std::vector<SparseRow> multiply_rows(const std::vector<SparseRow>& a, const std::vector<SparseRow>& b) {
    std::vector<SparseRow> out;
    out.reserve(a.size());
    for (const auto& r : a) out.push_back(row_times(r, b));
    return out;
}

}  // namespace detail

/// Smith form through alternating echelon forms. With transforms, U * M * V = diag.
inline SmithResult smith_by_echelon(const std::vector<SparseRow>& A, std::size_t cols, bool transforms) {
    const std::size_t m = A.size(), n = cols;
    std::vector<SparseRow> C = A;
    std::vector<SparseRow> U, Vt;
    if (transforms) {
        U = detail::identity_rows(m);
        Vt = detail::identity_rows(n);
    }
    std::size_t cur_rows = m;
    while (true) {
        auto st = detail::echelon_step(C, n, transforms);
        if (transforms) U = detail::multiply_rows(st.transform, U);
        C = std::move(st.reduced);
        cur_rows = C.size();
        if (detail::diagonal_pattern(C, n)) break;
        auto Ct = detail::transpose_rows(C, n);
        auto st2 = detail::echelon_step(Ct, cur_rows, transforms);
        if (transforms) Vt = detail::multiply_rows(st2.transform, Vt);
        if (!transforms) st2.reduced.resize(n);
        C = detail::transpose_rows(st2.reduced, cur_rows);
        if (detail::diagonal_pattern(C, n)) break;
    }
    // Move the surviving entries onto the main diagonal.
    std::vector<std::size_t> row_order, col_order;
    std::vector<Integer> d;
    std::vector<char> row_used(C.size(), 0), col_used(n, 0);
    for (std::size_t i = 0; i < C.size(); ++i)
        if (!C[i].empty()) {
            row_order.push_back(i);
            col_order.push_back(C[i][0].first);
            d.push_back(C[i][0].second);
            row_used[i] = 1;
            col_used[C[i][0].first] = 1;
        }
    const std::size_t r = d.size();
    if (transforms) {
        for (std::size_t i = 0; i < C.size(); ++i)
            if (!row_used[i]) row_order.push_back(i);
        for (std::size_t j = 0; j < n; ++j)
            if (!col_used[j]) col_order.push_back(j);
        std::vector<SparseRow> U2, V2;
        for (auto i : row_order) U2.push_back(std::move(U[i]));
        for (auto j : col_order) V2.push_back(std::move(Vt[j]));
        U = std::move(U2);
        Vt = std::move(V2);
    }
    for (std::size_t i = 0; i < r; ++i)
        if (d[i] < 0) {
            d[i] = -d[i];
            if (transforms) U[i] = scaled(U[i], Integer(-1));
        }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            if (divides(d[i], d[j])) continue;
            auto [g, s, t] = ext_gcd(d[i], d[j]);
            Integer a = d[i] / g, b = d[j] / g;
            if (transforms) {
                SparseRow ui = axpy(scaled(U[i], Integer(s)), Integer(t), U[j]);
                SparseRow uj = axpy(scaled(U[i], Integer(-b)), a, U[j]);
                U[i] = std::move(ui);
                U[j] = std::move(uj);
                SparseRow vi = axpy(Vt[i], Integer(1), Vt[j]);
                SparseRow vj = axpy(scaled(Vt[i], Integer(-t * b)), Integer(s * a), Vt[j]);
                Vt[i] = std::move(vi);
                Vt[j] = std::move(vj);
            }
            d[j] = d[i] * b;
            d[i] = g;
        }
    SmithResult res;
    res.diagonal.assign(std::min(m, n), 0);
    for (std::size_t i = 0; i < r; ++i) res.diagonal[i] = d[i];
    if (transforms) {
        res.U = DenseMatrix(m, std::vector<Integer>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (auto& [c, v] : U[i]) res.U[i][c] = v;
        res.V = DenseMatrix(n, std::vector<Integer>(n, 0));
        for (std::size_t j = 0; j < n; ++j)
            for (auto& [c, v] : Vt[j]) res.V[c][j] = v;
    }
    return res;
}

/// U * M * V = diag(D) exactly. Transforms come from the echelon engine; the
/// diagonal alone from the reference engine.
inline SmithResult smith_normal_form(const DenseMatrix& M, std::size_t cols, bool transforms = true) {
    if (!transforms) return detail::DenseSmith(M, cols, false).run();
    std::vector<SparseRow> rows;
    rows.reserve(M.size());
    for (const auto& r : M) rows.push_back(dense_to_row(r));
    return smith_by_echelon(rows, cols, true);
}

inline SmithResult smith_normal_form(const IntMatrix& M, bool transforms = true) {
    return smith_by_echelon(M.row_data(), M.cols(), transforms);
}

/// Reference engine with transforms, for small inputs.
inline SmithResult smith_normal_form_reference(const DenseMatrix& M, std::size_t cols, bool transforms = true) {
    return detail::DenseSmith(M, cols, transforms).run();
}

// Blocks at most this size go to the reference engine.
inline constexpr std::size_t kReferenceBlock = 40;

enum class SnfPath { sparse, lattice, dense };

/// Nonzero diagonal entries of the Smith form, ascending (so 1s first).
inline std::vector<Integer> invariant_factors(const std::vector<SparseRow>& rows, std::size_t cols, SnfPath path = SnfPath::sparse) {
    std::vector<Integer> out;
    std::vector<SparseRow> rest;
    switch (path) {
        case SnfPath::dense: {
            DenseMatrix d(rows.size(), std::vector<Integer>(cols, 0));
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (const auto& [c, v] : rows[i]) d[i][c] = v;
            for (auto& x : smith_normal_form_reference(d, cols, false).diagonal)
                if (x != 0) out.push_back(x);
            return out;
        }
        case SnfPath::sparse: {
            auto elim = eliminate_unit_pivots_exact(rows, cols);
            out.assign(elim.pivots, Integer(1));
            rest = std::move(elim.rest);
            break;
        }
        case SnfPath::lattice: {
            Lattice L(cols);
            L.insert_all(rows);
            rest = L.basis();
            break;
        }
    }
    if (!rest.empty()) {
        std::size_t rc = compress_columns(rest);
        std::vector<Integer> diag;
        if (path == SnfPath::sparse && rest.size() <= kReferenceBlock && rc <= kReferenceBlock) {
            DenseMatrix d(rest.size(), std::vector<Integer>(rc, 0));
            for (std::size_t i = 0; i < rest.size(); ++i)
                for (const auto& [c, v] : rest[i]) d[i][c] = v;
            diag = smith_normal_form_reference(d, rc, false).diagonal;
        } else {
            diag = smith_by_echelon(rest, rc, false).diagonal;
        }
        for (auto& x : diag)
            if (x != 0) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Integer> invariant_factors(const IntMatrix& M, SnfPath path = SnfPath::sparse) {
    return invariant_factors(M.row_data(), M.cols(), path);
}

inline std::size_t integer_rank(const std::vector<SparseRow>& rows, std::size_t cols) {
    return invariant_factors(rows, cols, SnfPath::sparse).size();
}

inline std::size_t integer_rank(const IntMatrix& M) { return integer_rank(M.row_data(), M.cols()); }

}  // namespace rbw
