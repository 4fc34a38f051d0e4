#pragma once

// Sparse integer rows and matrices, plus unit-pivot sparse elimination.

#include "rbw/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rbw {

/// Sorted by column, no explicit zeros.
template <class T>
using SparseRowT = std::vector<std::pair<std::uint32_t, T>>;
using SparseRow = SparseRowT<Integer>;
using DenseMatrix = std::vector<std::vector<Integer>>;

/// Thrown by the fixed-width kernels when an intermediate leaves int64.
struct CoefficientOverflow : std::overflow_error {
    CoefficientOverflow() : std::overflow_error("int64 coefficient overflow") {}
};

namespace coeff {

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow();
    return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow();
    return r;
}
inline Integer mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer add(const Integer& a, const Integer& b) { return a + b; }

inline bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
inline bool is_unit(const Integer& a) { return a == 1 || a == -1; }

}  // namespace coeff

/// y + a*x
template <class T>
SparseRowT<T> axpy(const SparseRowT<T>& y, const T& a, const SparseRowT<T>& x) {
    SparseRowT<T> out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, coeff::mul(a, x[j].second));
            ++j;
        } else {
            T v = coeff::add(y[i].second, coeff::mul(a, x[j].second));
            if (v != 0) out.emplace_back(y[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <class T>
SparseRowT<T> scaled(const SparseRowT<T>& x, const T& a) {
    if (a == 0) return {};
    SparseRowT<T> out;
    out.reserve(x.size());
    for (const auto& [c, v] : x) out.emplace_back(c, coeff::mul(a, v));
    return out;
}

/// Entry at column c, or nullptr.
template <class T>
const T* find_entry(const SparseRowT<T>& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; });
    if (it == row.end() || it->first != c) return nullptr;
    return &it->second;
}

/// Builds a sorted row from unsorted (col, value) terms, summing duplicates.
inline SparseRow make_row(std::vector<std::pair<std::uint32_t, Integer>> terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    for (auto& [c, v] : terms) {
        if (!out.empty() && out.back().first == c) out.back().second += v;
        else out.emplace_back(c, std::move(v));
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    return out;
}

inline SparseRow make_row(const std::vector<std::pair<std::uint32_t, std::int64_t>>& terms) {
    std::vector<std::pair<std::uint32_t, Integer>> big;
    big.reserve(terms.size());
    for (auto [c, v] : terms) big.emplace_back(c, Integer(static_cast<long>(v)));
    return make_row(std::move(big));
}

inline SparseRow dense_to_row(const std::vector<Integer>& v) {
    SparseRow out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return out;
}

inline std::vector<Integer> row_to_dense(const SparseRow& r, std::size_t n) {
    std::vector<Integer> v(n, 0);
    for (const auto& [c, x] : r) v[c] = x;
    return v;
}

/// Row vector times matrix given by sparse rows: sum_i r[i] * M[i].
inline SparseRow row_times(const SparseRow& r, const std::vector<SparseRow>& M) {
    SparseRow acc;
    for (const auto& [i, v] : r) acc = axpy(acc, v, M[i]);
    return acc;
}

class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}
    IntMatrix(std::size_t cols, std::vector<SparseRow> rows) : cols_(cols), data_(std::move(rows)) {}

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }
    const SparseRow& row(std::size_t i) const { return data_[i]; }
    SparseRow& row(std::size_t i) { return data_[i]; }
    const std::vector<SparseRow>& row_data() const { return data_; }
    void add_row(SparseRow r) { data_.push_back(std::move(r)); }

    Integer at(std::size_t i, std::size_t j) const {
        const Integer* e = find_entry(data_[i], static_cast<std::uint32_t>(j));
        return e ? *e : Integer(0);
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (const auto& [c, v] : data_[i]) t.data_[c].emplace_back(static_cast<std::uint32_t>(i), v);
        return t;
    }

    IntMatrix operator*(const IntMatrix& other) const {
        IntMatrix out(rows(), other.cols());
        for (std::size_t i = 0; i < rows(); ++i) out.data_[i] = row_times(data_[i], other.data_);
        return out;
    }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    DenseMatrix dense() const {
        DenseMatrix d(rows(), std::vector<Integer>(cols_, 0));
        for (std::size_t i = 0; i < rows(); ++i)
            for (const auto& [c, v] : data_[i]) d[i][c] = v;
        return d;
    }

    static IntMatrix from_dense(const DenseMatrix& d, std::size_t cols) {
        IntMatrix m(d.size(), cols);
        for (std::size_t i = 0; i < d.size(); ++i) m.data_[i] = dense_to_row(d[i]);
        return m;
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i] = {{static_cast<std::uint32_t>(i), Integer(1)}};
        return m;
    }

    bool operator==(const IntMatrix& o) const { return cols_ == o.cols_ && data_ == o.data_; }

  private:
    std::size_t cols_ = 0;
    std::vector<SparseRow> data_;
};

template <class T>
struct UnitEliminationResult {
    std::size_t pivots = 0;
    std::vector<SparseRowT<T>> rest;   // rows not consumed by a unit pivot, original column indices
};

/// Row reduction using only +-1 pivots, chosen greedily (shortest row, then
/// sparsest column). Each pivot contributes an invariant factor 1 and splits
/// off; the rows left over carry the remaining invariant factors.
template <class T>
UnitEliminationResult<T> eliminate_unit_pivots(std::vector<SparseRowT<T>> rows, std::size_t ncols) {
    const std::size_t m = rows.size();
    std::vector<std::vector<std::uint32_t>> col_rows(ncols);
    std::vector<std::uint32_t> col_count(ncols, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& e : rows[i]) {
            col_rows[e.first].push_back(static_cast<std::uint32_t>(i));
            ++col_count[e.first];
        }
    std::vector<char> dead(m, 0);
    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t i = 0; i < m; ++i)
        if (!rows[i].empty()) pq.push({rows[i].size(), static_cast<std::uint32_t>(i)});

    UnitEliminationResult<T> res;
    while (!pq.empty()) {
        auto [len, r] = pq.top();
        pq.pop();
        if (dead[r] || rows[r].size() != len || rows[r].empty()) continue;
        std::size_t best = rows[r].size();
        for (std::size_t k = 0; k < rows[r].size(); ++k) {
            if (!coeff::is_unit(rows[r][k].second)) continue;
            if (best == rows[r].size() || col_count[rows[r][k].first] < col_count[rows[r][best].first]) best = k;
        }
        if (best == rows[r].size()) continue;  // revisited if another pivot changes it
        const std::uint32_t c = rows[r][best].first;
        const T piv = rows[r][best].second;
        dead[r] = 1;
        ++res.pivots;
        for (const auto& e : rows[r]) --col_count[e.first];
        for (std::uint32_t r2 : col_rows[c]) {
            if (dead[r2]) continue;
            const T* v = find_entry(rows[r2], c);
            if (!v) continue;
            T factor = coeff::mul(*v, piv);  // piv = +-1, so v / piv = v * piv
            factor = coeff::mul(factor, T(-1));
            auto updated = axpy(rows[r2], factor, rows[r]);
            for (const auto& e : rows[r2]) --col_count[e.first];
            for (const auto& e : updated) {
                ++col_count[e.first];
                if (!find_entry(rows[r2], e.first)) col_rows[e.first].push_back(r2);
            }
            rows[r2] = std::move(updated);
            if (!rows[r2].empty()) pq.push({rows[r2].size(), r2});
        }
        col_rows[c].clear();
        col_rows[c].shrink_to_fit();
        SparseRowT<T>().swap(rows[r]);
    }
    for (std::size_t i = 0; i < m; ++i)
        if (!dead[i] && !rows[i].empty()) res.rest.push_back(std::move(rows[i]));
    return res;
}

/// Converts to int64 rows; returns false if an entry does not fit.
inline bool to_small(const std::vector<SparseRow>& in, std::vector<SparseRowT<std::int64_t>>& out) {
    out.clear();
    out.reserve(in.size());
    for (const auto& r : in) {
        SparseRowT<std::int64_t> s;
        s.reserve(r.size());
        for (const auto& [c, v] : r) {
            if (!v.fits_slong_p()) return false;
            s.emplace_back(c, v.get_si());
        }
        out.push_back(std::move(s));
    }
    return true;
}

inline std::vector<SparseRow> to_big(const std::vector<SparseRowT<std::int64_t>>& in) {
    std::vector<SparseRow> out;
    out.reserve(in.size());
    for (const auto& r : in) {
        SparseRow s;
        s.reserve(r.size());
        for (const auto& [c, v] : r) s.emplace_back(c, Integer(static_cast<long>(v)));
        out.push_back(std::move(s));
    }
    return out;
}

/// Unit-pivot elimination with an int64 fast path and an exact fallback.
inline UnitEliminationResult<Integer> eliminate_unit_pivots_exact(const std::vector<SparseRow>& rows, std::size_t ncols) {
    std::vector<SparseRowT<std::int64_t>> small;
    if (to_small(rows, small)) {
        try {
            auto r = eliminate_unit_pivots<std::int64_t>(std::move(small), ncols);
            return {r.pivots, to_big(r.rest)};
        } catch (const CoefficientOverflow&) {
        }
    }
    return eliminate_unit_pivots<Integer>(rows, ncols);
}

/// Renumbers the used columns of a row set densely; returns the column count.
inline std::size_t compress_columns(std::vector<SparseRow>& rows) {
    std::vector<std::uint32_t> used;
    for (const auto& r : rows)
        for (const auto& e : r) used.push_back(e.first);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto& r : rows)
        for (auto& e : r) e.first = static_cast<std::uint32_t>(std::lower_bound(used.begin(), used.end(), e.first) - used.begin());
    return used.size();
}

}  // namespace rbw
