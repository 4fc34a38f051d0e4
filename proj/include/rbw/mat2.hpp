#pragma once

// 2x2 matrices over an enumerated ring and the standard elements of SL2(A).

#include "rbw/ring.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace rbw {

/// [[a, b], [c, d]]
struct Mat2 {
    Elem a = 1, b = 0, c = 0, d = 1;

    auto operator<=>(const Mat2&) const = default;

    /// 16 bits per entry; rings are bounded by 2^14 elements.
    std::uint64_t key() const {
        return (static_cast<std::uint64_t>(a) << 48) | (static_cast<std::uint64_t>(b) << 32) |
               (static_cast<std::uint64_t>(c) << 16) | static_cast<std::uint64_t>(d);
    }
    static Mat2 from_key(std::uint64_t k) {
        return {static_cast<Elem>(k >> 48), static_cast<Elem>((k >> 32) & 0xffff),
                static_cast<Elem>((k >> 16) & 0xffff), static_cast<Elem>(k & 0xffff)};
    }
};

/// Column vector (x, y).
struct Vec2 {
    Elem x = 0, y = 0;
    auto operator<=>(const Vec2&) const = default;
};

struct Mat2Hash {
    std::size_t operator()(const Mat2& m) const noexcept { return std::hash<std::uint64_t>{}(m.key()); }
};

class SL2 {
  public:
    explicit SL2(RingPtr ring) : ring_(std::move(ring)) {}

    const Ring& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }

    Mat2 identity() const { return {1, 0, 0, 1}; }

    Mat2 mul(const Mat2& x, const Mat2& y) const {
        const Ring& R = *ring_;
        return {R.add(R.mul(x.a, y.a), R.mul(x.b, y.c)), R.add(R.mul(x.a, y.b), R.mul(x.b, y.d)),
                R.add(R.mul(x.c, y.a), R.mul(x.d, y.c)), R.add(R.mul(x.c, y.b), R.mul(x.d, y.d))};
    }

    Elem det(const Mat2& x) const { return ring_->sub(ring_->mul(x.a, x.d), ring_->mul(x.b, x.c)); }

    Mat2 inv(const Mat2& x) const {
        const Ring& R = *ring_;
        Elem di = R.inv(det(x));
        return {R.mul(di, x.d), R.mul(di, R.neg(x.b)), R.mul(di, R.neg(x.c)), R.mul(di, x.a)};
    }

    Vec2 apply(const Mat2& m, const Vec2& v) const {
        const Ring& R = *ring_;
        return {R.add(R.mul(m.a, v.x), R.mul(m.b, v.y)), R.add(R.mul(m.c, v.x), R.mul(m.d, v.y))};
    }

    bool is_sl2(const Mat2& x) const { return det(x) == ring_->one(); }

    /// w = [[0,1],[-1,0]]
    Mat2 w() const { return {0, 1, ring_->neg(1), 0}; }
    /// diag(a, a^{-1})
    Mat2 diag(Elem a) const { return {a, 0, 0, ring_->inv(a)}; }
    /// g_x = [[0,1],[1,x]]; an SL2 element only when -1 = 1.
    Mat2 g(Elem x) const { return {0, 1, 1, x}; }
    /// h_x = [[1, x^{-1}],[0,1]]
    Mat2 h(Elem x) const { return {1, ring_->inv(x), 0, 1}; }
    /// [[1,b],[0,1]]
    Mat2 unipotent(Elem b) const { return {1, b, 0, 1}; }
    /// [[a,b],[0,a^{-1}]]
    Mat2 upper(Elem a, Elem b) const { return {a, b, 0, ring_->inv(a)}; }

    bool in_B(const Mat2& x) const { return x.c == 0; }
    bool in_T(const Mat2& x) const { return x.b == 0 && x.c == 0; }
    bool in_N(const Mat2& x) const { return x.a == 1 && x.d == 1 && x.c == 0; }

    std::uint64_t order() const {
        // |SL2(A)| = |{unimodular columns}| * |A|.
        return unimodular_count() * ring_->size();
    }

    /// All of SL2(A) in ascending key order. Throws BudgetExceeded past limit.
    std::vector<Mat2> enumerate(std::uint64_t limit) const {
        std::uint64_t n = order();
        if (n > limit) throw BudgetExceeded("SL2 enumeration", n, limit);
        const Ring& R = *ring_;
        std::vector<Mat2> out;
        out.reserve(n);
        for (Elem a = 0; a < R.size(); ++a)
            for (Elem c = 0; c < R.size(); ++c) {
                if (!unimodular(a, c)) continue;
                // One particular (b0, d0) with a*d0 - b0*c = 1, then add multiples of (a, c).
                Mat2 base = complete_column(a, c);
                for (Elem t = 0; t < R.size(); ++t)
                    out.push_back({a, R.add(base.b, R.mul(t, a)), c, R.add(base.d, R.mul(t, c))});
            }
        std::sort(out.begin(), out.end(), [](const Mat2& x, const Mat2& y) { return x.key() < y.key(); });
        return out;
    }

    /// (a, c) generates the unit ideal.
    bool unimodular(Elem a, Elem c) const {
        const Ring& R = *ring_;
        if (R.is_unit(a) || R.is_unit(c)) return true;
        if (R.is_local()) return false;
        if (R.spec().kind == RingKind::residue_ring) return gcd64(gcd64(a, c), R.spec().m) == 1;
        for (Elem s = 0; s < R.size(); ++s)
            for (Elem t = 0; t < R.size(); ++t)
                if (R.add(R.mul(s, a), R.mul(t, c)) == R.one()) return true;
        return false;
    }

    /// Some SL2 matrix with first column (a, c).
    Mat2 complete_column(Elem a, Elem c) const {
        const Ring& R = *ring_;
        if (R.is_unit(a)) return {a, 0, c, R.inv(a)};
        if (R.is_unit(c)) return {a, R.neg(R.inv(c)), c, 0};
        for (Elem b = 0; b < R.size(); ++b)
            for (Elem d = 0; d < R.size(); ++d) {
                Mat2 m{a, b, c, d};
                if (is_sl2(m)) return m;
            }
        throw InvalidInput("column is not unimodular");
    }

    std::string format(const Mat2& m) const {
        const Ring& R = *ring_;
        return "[[" + R.format(m.a) + "," + R.format(m.b) + "],[" + R.format(m.c) + "," + R.format(m.d) + "]]";
    }

  private:
    std::uint64_t unimodular_count() const {
        const Ring& R = *ring_;
        if (R.is_local()) {
            // Pairs with at least one unit coordinate.
            std::uint64_t n = R.size(), nonunits = n - R.unit_count();
            return n * n - nonunits * nonunits;
        }
        std::uint64_t count = 0;
        for (Elem a = 0; a < R.size(); ++a)
            for (Elem c = 0; c < R.size(); ++c)
                if (unimodular(a, c)) ++count;
        return count;
    }

    RingPtr ring_;
};

}  // namespace rbw
