#pragma once

// Integer row lattices kept in echelon form.

#include "rbw/sparse.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace rbw {

/// Sublattice of Z^n spanned by inserted rows. The basis is in row echelon
/// form with positive pivots; entries right of a pivot are reduced into
/// [0, pivot) against later basis rows at insertion time.
class Lattice {
  public:
    explicit Lattice(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    void insert(SparseRow v) {
        while (!v.empty()) {
            const std::uint32_t c = v.front().first;
            auto it = rows_.find(c);
            if (it == rows_.end()) {
                if (v.front().second < 0) v = scaled(v, Integer(-1));
                reduce_tail(v);
                rows_.emplace(c, std::move(v));
                return;
            }
            SparseRow& b = it->second;
            const Integer p = b.front().second;
            const Integer a = v.front().second;
            if (divides(p, a)) {
                v = axpy(v, Integer(-(a / p)), b);
            } else {
                auto [g, s, t] = ext_gcd(p, a);
                SparseRow combined = axpy(scaled(b, Integer(s)), Integer(t), v);
                v = axpy(scaled(v, Integer(p / g)), Integer(-(a / g)), b);
                b = std::move(combined);
                reduce_tail(b);
            }
        }
    }

    template <class Rows>
    void insert_all(const Rows& rows) {
        for (const auto& r : rows) insert(r);
    }

    /// Basis rows ordered by pivot column.
    std::vector<SparseRow> basis() const {
        std::vector<SparseRow> out;
        out.reserve(rows_.size());
        for (const auto& [c, r] : rows_) out.push_back(r);
        return out;
    }

    std::vector<std::uint32_t> pivots() const {
        std::vector<std::uint32_t> out;
        for (const auto& [c, r] : rows_) out.push_back(c);
        return out;
    }

    /// Coordinates of v in basis(), or nullopt when v is not in the lattice.
    std::optional<SparseRow> coordinates(SparseRow v) const {
        std::vector<std::pair<std::uint32_t, Integer>> coords;
        std::vector<std::uint32_t> piv;
        piv.reserve(rows_.size());
        for (const auto& [c, r] : rows_) piv.push_back(c);
        while (!v.empty()) {
            const std::uint32_t c = v.front().first;
            auto it = rows_.find(c);
            if (it == rows_.end()) return std::nullopt;
            const Integer& p = it->second.front().second;
            if (!divides(p, v.front().second)) return std::nullopt;
            Integer q = v.front().second / p;
            v = axpy(v, Integer(-q), it->second);
            auto idx = std::lower_bound(piv.begin(), piv.end(), c) - piv.begin();
            coords.emplace_back(static_cast<std::uint32_t>(idx), std::move(q));
        }
        return make_row(std::move(coords));
    }

    bool contains(const SparseRow& v) const { return coordinates(v).has_value(); }

    /// Lattice intersection with the coordinate subspace of columns >= start,
    /// shifted down by start.
    Lattice tail_from(std::uint32_t start, std::size_t new_dim) const {
        Lattice out(new_dim);
        for (auto it = rows_.lower_bound(start); it != rows_.end(); ++it) {
            SparseRow r;
            for (const auto& [c, v] : it->second) r.emplace_back(c - start, v);
            out.rows_.emplace(r.front().first, std::move(r));
        }
        return out;
    }

    /// L1 intersect L2.
    static Lattice intersection(const Lattice& a, const Lattice& b) {
        // Rows (x | x) for x in a, (y | 0) for y in b; the part with zero
        // first half is {(0 | x) : x in a, x in b}.
        const std::size_t n = a.dim();
        Lattice aug(2 * n);
        for (const auto& [c, r] : a.rows_) {
            SparseRow row = r;
            for (const auto& [cc, v] : r) row.emplace_back(static_cast<std::uint32_t>(cc + n), v);
            aug.insert(std::move(row));
        }
        for (const auto& [c, r] : b.rows_) aug.insert(r);
        return aug.tail_from(static_cast<std::uint32_t>(n), n);
    }

  private:
    // Brings entries right of the pivot into [0, p) against existing rows.
    void reduce_tail(SparseRow& v) const {
        std::size_t k = 1;
        while (k < v.size()) {
            const std::uint32_t c = v[k].first;
            auto it = rows_.find(c);
            if (it != rows_.end()) {
                Integer q = floor_div(v[k].second, it->second.front().second);
                if (q != 0) {
                    v = axpy(v, Integer(-q), it->second);
                    k = static_cast<std::size_t>(
                        std::lower_bound(v.begin(), v.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; }) -
                        v.begin());
                    if (k < v.size() && v[k].first == c) ++k;
                    continue;
                }
            }
            ++k;
        }
    }

    std::size_t dim_;
    std::map<std::uint32_t, SparseRow> rows_;
};

}  // namespace rbw
