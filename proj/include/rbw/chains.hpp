#pragma once

// Formal chains in the bar and homogeneous resolutions, the coinvariant
// products B_n (x)_G X_p, and the pushdown to bar chains over the torus.

#include "rbw/lattice.hpp"
#include "rbw/mat2.hpp"
#include "rbw/xcomplex.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rbw {

inline bool is_group_identity(const Mat2& m) { return m == Mat2{}; }
inline bool is_group_identity(Elem e) { return e == 1; }

/// SL2(A) as an abstract group.
struct MatGroup {
    const SL2* G;
    Mat2 one() const { return G->identity(); }
    Mat2 mul(const Mat2& x, const Mat2& y) const { return G->mul(x, y); }
    Mat2 inv(const Mat2& x) const { return G->inv(x); }
};

/// A^x; the unit u stands for diag(u, u^{-1}) in T(A).
struct UnitOps {
    const Ring* R;
    Elem one() const { return R->one(); }
    Elem mul(Elem x, Elem y) const { return R->mul(x, y); }
    Elem inv(Elem x) const { return R->inv(x); }
};

/// Finitely supported integer combination of equal-length tuples. With
/// Normalized set, tuples containing the identity are zero.
template <class E, bool Normalized>
class FormalChain {
  public:
    using Tuple = std::vector<E>;
    using Terms = std::map<Tuple, std::int64_t>;

    FormalChain() = default;
    explicit FormalChain(std::size_t degree) : n_(degree) {}
    FormalChain(std::size_t degree, std::initializer_list<std::pair<Tuple, std::int64_t>> terms) : n_(degree) {
        for (const auto& [t, c] : terms) add(t, c);
    }

    std::size_t degree() const { return n_; }
    std::size_t length() const { return Normalized ? n_ : n_ + 1; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::int64_t coef(const Tuple& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? 0 : it->second;
    }

    FormalChain& add(const Tuple& t, std::int64_t c) {
        if (t.size() != length()) throw InvalidInput("tuple length does not match the chain degree");
        if (c == 0) return *this;
        if constexpr (Normalized)
            for (const auto& g : t)
                if (is_group_identity(g)) return *this;
        auto [it, fresh] = terms_.emplace(t, c);
        if (!fresh && (it->second += c) == 0) terms_.erase(it);
        return *this;
    }

    FormalChain& operator+=(const FormalChain& o) {
        check(o);
        for (const auto& [t, c] : o.terms_) add(t, c);
        return *this;
    }
    FormalChain& operator-=(const FormalChain& o) {
        check(o);
        for (const auto& [t, c] : o.terms_) add(t, -c);
        return *this;
    }
    FormalChain operator+(const FormalChain& o) const { return FormalChain(*this) += o; }
    FormalChain operator-(const FormalChain& o) const { return FormalChain(*this) -= o; }
    FormalChain operator-() const { return scaled(-1); }
    FormalChain scaled(std::int64_t k) const {
        FormalChain r(n_);
        for (const auto& [t, c] : terms_) r.add(t, k * c);
        return r;
    }
    bool operator==(const FormalChain& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  private:
    void check(const FormalChain& o) const {
        if (o.n_ != n_) throw InvalidInput("adding chains of different degrees");
    }

    std::size_t n_ = 0;
    Terms terms_;
};

template <class E>
using BarChainT = FormalChain<E, true>;
template <class E>
using HomogChainT = FormalChain<E, false>;

using BarChain = BarChainT<Mat2>;
using HomogChain = HomogChainT<Mat2>;
using UnitBarChain = BarChainT<Elem>;
using UnitHomogChain = HomogChainT<Elem>;

/// Boundary in B_n (x)_G Z: the leading coefficient g_1 acts trivially.
template <class E, class Ops>
BarChainT<E> bar_d(const BarChainT<E>& c, const Ops& ops) {
    const std::size_t n = c.degree();
    if (n == 0) throw InvalidInput("bar boundary needs degree >= 1");
    BarChainT<E> out(n - 1);
    for (const auto& [t, k] : c.terms()) {
        out.add(std::vector<E>(t.begin() + 1, t.end()), k);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::vector<E> u;
            u.reserve(n - 1);
            u.insert(u.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
            u.push_back(ops.mul(t[i], t[i + 1]));
            u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 2), t.end());
            out.add(u, (i % 2 == 0) ? -k : k);
        }
        out.add(std::vector<E>(t.begin(), t.end() - 1), (n % 2 == 0) ? k : -k);
    }
    return out;
}

template <class E>
HomogChainT<E> homog_d(const HomogChainT<E>& c) {
    const std::size_t n = c.degree();
    if (n == 0) throw InvalidInput("homogeneous boundary needs degree >= 1");
    HomogChainT<E> out(n - 1);
    for (const auto& [t, k] : c.terms())
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<E> u = t;
            u.erase(u.begin() + static_cast<std::ptrdiff_t>(i));
            out.add(u, (i % 2 == 0) ? k : -k);
        }
    return out;
}

/// [h_1|...|h_n] -> (1, h_1, h_1 h_2, ..., h_1...h_n)
template <class E, class Ops>
std::vector<E> bar_to_homog_tuple(const std::vector<E>& t, const Ops& ops, E start) {
    std::vector<E> out{start};
    for (const auto& g : t) out.push_back(ops.mul(out.back(), g));
    return out;
}

template <class E, class Ops>
HomogChainT<E> to_homog(const BarChainT<E>& c, const Ops& ops) {
    HomogChainT<E> out(c.degree());
    for (const auto& [t, k] : c.terms()) out.add(bar_to_homog_tuple(t, ops, ops.one()), k);
    return out;
}

/// (g_0, ..., g_n) -> g_0 [g_0^{-1} g_1 | ... | g_{n-1}^{-1} g_n]; returns the coefficient g_0.
template <class E, class Ops>
std::pair<E, std::vector<E>> homog_to_bar_tuple(const std::vector<E>& t, const Ops& ops) {
    std::vector<E> out;
    for (std::size_t i = 1; i < t.size(); ++i) out.push_back(ops.mul(ops.inv(t[i - 1]), t[i]));
    return {t.front(), out};
}

/// Homogeneous to bar in the coinvariant quotient, where g_0 acts trivially.
template <class E, class Ops>
BarChainT<E> to_bar(const HomogChainT<E>& c, const Ops& ops) {
    BarChainT<E> out(c.degree());
    for (const auto& [t, k] : c.terms()) out.add(homog_to_bar_tuple(t, ops).second, k);
    return out;
}

/// B_n (x)_G X_p. A term ([g_1|...|g_n], x) stands for [g_1|...|g_n] (x) x with
/// trivial group coefficient, which is a normal form: g[..] (x) x = [..] (x) g^{-1}x.
class TensorChain {
  public:
    using Key = std::pair<XGen, std::vector<Mat2>>;

    TensorChain() = default;
    TensorChain(std::size_t degree, std::size_t level) : n_(degree), p_(level) {}

    std::size_t degree() const { return n_; }
    std::size_t level() const { return p_; }
    const std::map<Key, std::int64_t>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c [tuple] (x) x with the stored pair already normalized.
    TensorChain& add_normal(const std::vector<Mat2>& t, const XGen& x, std::int64_t c) {
        if (t.size() != n_ || x.size() != p_ + 1) throw InvalidInput("tensor term has the wrong shape");
        if (c == 0) return *this;
        for (const auto& g : t)
            if (is_group_identity(g)) return *this;
        auto [it, fresh] = terms_.emplace(Key{x, t}, c);
        if (!fresh && (it->second += c) == 0) terms_.erase(it);
        return *this;
    }

    TensorChain& operator+=(const TensorChain& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_normal(k.second, k.first, c);
        return *this;
    }
    TensorChain& operator-=(const TensorChain& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_normal(k.second, k.first, -c);
        return *this;
    }
    TensorChain operator+(const TensorChain& o) const { return TensorChain(*this) += o; }
    TensorChain operator-(const TensorChain& o) const { return TensorChain(*this) -= o; }
    TensorChain scaled(std::int64_t k) const {
        TensorChain r(n_, p_);
        for (const auto& [key, c] : terms_) r.add_normal(key.second, key.first, k * c);
        return r;
    }
    bool operator==(const TensorChain& o) const { return n_ == o.n_ && p_ == o.p_ && terms_ == o.terms_; }

  private:
    void check(const TensorChain& o) const {
        if (o.n_ != n_ || o.p_ != p_) throw InvalidInput("adding tensor chains of different shapes");
    }

    std::size_t n_ = 0, p_ = 0;
    std::map<Key, std::int64_t> terms_;
};

/// g = s * gbar with s the chosen coset representative.
struct SectionValue {
    Mat2 s, gbar;
};

/// Term of a tensor chain written against the standard representative.
struct StandardTerm {
    Mat2 coef;                 // h^{-1} for a witness h with h * std = x
    std::vector<Mat2> tuple;
    std::int64_t c;
};

struct BoundarySearch {
    std::optional<UnitBarChain> witness;
    std::size_t basis_size = 0;
    bool found() const { return witness.has_value(); }
};

/// Integer solver for bar_d(beta) = c with beta supported on (n+1)-tuples
/// over a finite alphabet of units.
class BoundarySolver {
  public:
    BoundarySolver(const Ring& R, const std::vector<Elem>& alphabet, std::size_t n, std::size_t budget)
        : R_(&R), n_(n) {
        for (Elem e : alphabet)
            if (e != R.one()) elems_.push_back(e);
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        std::size_t sources = 1;
        for (std::size_t i = 0; i <= n; ++i) {
            sources *= elems_.size();
            if (sources > budget) {
                basis_size_ = sources;
                over_budget_ = true;
                return;
            }
        }
        basis_size_ = sources;
        build(sources);
    }

    std::size_t basis_size() const { return basis_size_; }
    bool over_budget() const { return over_budget_; }

    std::optional<UnitBarChain> solve(const UnitBarChain& c) const {
        if (over_budget_ || c.degree() != n_) return std::nullopt;
        std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
        for (const auto& [t, k] : c.terms()) {
            auto it = target_.find(t);
            if (it == target_.end()) return std::nullopt;
            entries.emplace_back(it->second, k);
        }
        SparseRow v = make_row(entries);
        const auto basis = aug_.basis();
        const auto piv = aug_.pivots();
        const auto T = static_cast<std::uint32_t>(target_.size());
        for (std::size_t i = 0; i < basis.size() && !v.empty(); ++i) {
            const std::uint32_t col = v.front().first;
            if (col >= T || piv[i] >= T) break;
            if (col < piv[i]) return std::nullopt;
            if (col > piv[i]) continue;
            const Integer& p = basis[i].front().second;
            if (!divides(p, v.front().second)) return std::nullopt;
            v = axpy(v, Integer(-(v.front().second / p)), basis[i]);
        }
        if (!v.empty() && v.front().first < T) return std::nullopt;
        // Tracking columns hold minus the combination of kept source rows.
        UnitBarChain w(n_ + 1);
        for (const auto& [col, val] : v) {
            if (!val.fits_slong_p()) throw ConstructionError("boundary witness coefficient overflow");
            w.add(tuple_of(kept_[col - T]), -val.get_si());
        }
        return w;
    }

  private:
    std::vector<Elem> tuple_of(std::size_t idx) const {
        std::vector<Elem> t(n_ + 1);
        for (std::size_t i = n_ + 1; i-- > 0;) {
            t[i] = elems_[idx % elems_.size()];
            idx /= elems_.size();
        }
        return t;
    }

    void build(std::size_t sources) {
        UnitOps ops{R_};
        std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> raw;
        std::vector<std::size_t> src;
        for (std::size_t j = 0; j < sources; ++j) {
            UnitBarChain b(n_ + 1);
            b.add(tuple_of(j), 1);
            const UnitBarChain db = bar_d(b, ops);
            if (db.empty()) continue;
            std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
            for (const auto& [t, k] : db.terms()) {
                auto [it, fresh] = target_.emplace(t, static_cast<std::uint32_t>(target_.size()));
                entries.emplace_back(it->second, k);
            }
            raw.push_back(std::move(entries));
            src.push_back(j);
        }
        // Keep only rows that enlarge the boundary lattice, then solve with tracking.
        const auto T = static_cast<std::uint32_t>(target_.size());
        Lattice plain(T);
        std::vector<SparseRow> rows;
        for (std::size_t r = 0; r < raw.size(); ++r) {
            SparseRow row = make_row(raw[r]);
            if (plain.contains(row)) continue;
            plain.insert(row);
            kept_.push_back(src[r]);
            rows.push_back(std::move(row));
        }
        aug_ = Lattice(T + rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].emplace_back(static_cast<std::uint32_t>(T + i), Integer(1));
            aug_.insert(std::move(rows[i]));
        }
    }

    const Ring* R_;
    std::size_t n_;
    std::vector<Elem> elems_;
    std::size_t basis_size_ = 0;
    bool over_budget_ = false;
    std::map<std::vector<Elem>, std::uint32_t> target_;
    std::vector<std::size_t> kept_;
    Lattice aug_;
};

/// Group actions, sections and pushdowns over a fixed local ring.
class ChainCalculus {
  public:
    explicit ChainCalculus(RingPtr ring, std::size_t solver_budget = 5000)
        : R_(std::move(ring)), G_(R_), L_(R_), budget_(solver_budget) {}

    const Ring& ring() const { return *R_; }
    const SL2& sl2() const { return G_; }
    const LineSpace& lines() const { return L_; }
    MatGroup mat_ops() const { return {&G_}; }
    UnitOps unit_ops() const { return {R_.get()}; }

    XGen standard(std::size_t level) const {
        XGen s{L_.infinity(), L_.zero()};
        if (level > 1) throw InvalidInput("standard representatives exist for X_0 and X_1");
        s.resize(level + 1);
        return s;
    }

    XGen act(const Mat2& g, const XGen& x) const {
        XGen out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = L_.act(G_, g, x[i]);
        return out;
    }

    void validate(const XGen& x) const {
        for (auto l : x)
            if (l >= L_.count()) throw InvalidInput("line index out of range");
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (!L_.basis(x[i], x[j])) throw InvalidInput("X_p entries are not pairwise bases");
    }

    /// h in SL2 with h * std = x, for x in X_0 or X_1.
    Mat2 witness(const XGen& x) const {
        validate(x);
        const Vec2 v0 = L_.vec(x.at(0));
        if (x.size() == 1) return G_.complete_column(v0.x, v0.y);
        if (x.size() != 2) throw InvalidInput("witnesses cover X_0 and X_1");
        const Vec2 v1 = L_.vec(x[1]);
        const Elem di = R_->inv(L_.det(x[0], x[1]));
        return {v0.x, R_->mul(di, v1.x), v0.y, R_->mul(di, v1.y)};
    }

    /// c g[tuple] (x) x, normalized to g^{-1}x.
    TensorChain& add(TensorChain& ch, const Mat2& g, const std::vector<Mat2>& tuple, const XGen& x,
                     std::int64_t c) const {
        validate(x);
        return ch.add_normal(tuple, is_group_identity(g) ? x : act(G_.inv(g), x), c);
    }
    TensorChain& add(TensorChain& ch, const std::vector<Mat2>& tuple, const XGen& x, std::int64_t c) const {
        return add(ch, G_.identity(), tuple, x, c);
    }

    /// Every term as h^{-1}[tuple] (x) std.
    std::vector<StandardTerm> standard_terms(const TensorChain& ch) const {
        std::vector<StandardTerm> out;
        for (const auto& [k, c] : ch.terms()) out.push_back({G_.inv(witness(k.first)), k.second, c});
        return out;
    }

    /// d (x) id.
    TensorChain d_bar(const TensorChain& ch) const {
        const std::size_t n = ch.degree();
        if (n == 0) throw InvalidInput("bar boundary needs degree >= 1");
        TensorChain out(n - 1, ch.level());
        for (const auto& [key, k] : ch.terms()) {
            const auto& [x, t] = key;
            out.add_normal(std::vector<Mat2>(t.begin() + 1, t.end()), act(G_.inv(t[0]), x), k);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                std::vector<Mat2> u(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
                u.push_back(G_.mul(t[i], t[i + 1]));
                u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 2), t.end());
                out.add_normal(u, x, (i % 2 == 0) ? -k : k);
            }
            out.add_normal(std::vector<Mat2>(t.begin(), t.end() - 1), x, (n % 2 == 0) ? k : -k);
        }
        return out;
    }

    /// id (x) boundary of X_p.
    TensorChain d_x(const TensorChain& ch) const {
        const std::size_t p = ch.level();
        if (p == 0) throw InvalidInput("X_0 has no boundary inside the complex");
        TensorChain out(ch.degree(), p - 1);
        for (const auto& [key, k] : ch.terms())
            for (std::size_t i = 0; i <= p; ++i) {
                XGen y = key.first;
                y.erase(y.begin() + static_cast<std::ptrdiff_t>(i));
                out.add_normal(key.second, y, (i % 2 == 0) ? k : -k);
            }
        return out;
    }

    /// T-coset section: [[1, a^{-1}b],[ac, ad]] when a is a unit, [[0,1],[-1,bd]] when a = 0.
    SectionValue section_T(const Mat2& g) const {
        const Ring& R = *R_;
        if (R.is_unit(g.a)) {
            const Mat2 s{1, R.div(g.b, g.a), R.mul(g.a, g.c), R.mul(g.a, g.d)};
            return {s, G_.diag(g.a)};
        }
        if (g.a == 0) return {Mat2{0, 1, R.neg(1), R.mul(g.b, g.d)}, G_.diag(g.b)};
        throw InvalidInput("T-section undefined: top-left entry is a nonzero non-unit");
    }

    /// B-coset section, constant on B g: the bottom row is scaled to (1, d/c)
    /// when c is a unit and to (c/d, 1) otherwise.
    SectionValue section_B(const Mat2& g) const {
        const Ring& R = *R_;
        Mat2 s;
        if (R.is_unit(g.c))
            s = {0, R.neg(1), 1, R.div(g.d, g.c)};
        else if (R.is_unit(g.d))
            s = {1, 0, R.div(g.c, g.d), 1};
        else
            throw InvalidInput("bottom row is not unimodular");
        return {s, G_.mul(g, G_.inv(s))};
    }

    /// B(A) -> T(A), dropping the unipotent part.
    Mat2 alpha(const Mat2& b) const {
        if (!G_.in_B(b)) throw InvalidInput("alpha is defined on B(A)");
        return G_.diag(b.a);
    }

    /// X_1 level to B_n(A^x) (x) Z through the T-section.
    UnitBarChain push_X1_to_T(const TensorChain& ch) const {
        if (ch.level() != 1) throw InvalidInput("push_X1_to_T expects a level-1 chain");
        return push(ch, [&](const Mat2& g) { return section_T(g).gbar.a; });
    }

    /// X_0 level to B_n(A^x) (x) Z through the B-section and alpha.
    UnitBarChain push_X0_to_T(const TensorChain& ch) const {
        if (ch.level() != 0) throw InvalidInput("push_X0_to_T expects a level-0 chain");
        return push(ch, [&](const Mat2& g) { return alpha(section_B(g).gbar).a; });
    }

    std::vector<Elem> subgroup_generated(const std::vector<Elem>& gens) const {
        std::set<Elem> H{R_->one()};
        std::vector<Elem> frontier{R_->one()};
        while (!frontier.empty()) {
            Elem x = frontier.back();
            frontier.pop_back();
            for (Elem g : gens) {
                Elem y = R_->mul(x, g);
                if (H.insert(y).second) frontier.push_back(y);
            }
        }
        return {H.begin(), H.end()};
    }

    /// beta with bar_d(beta) = c. Sources are (n+1)-tuples over the support
    /// entries and their inverses, then over pairwise products, then over the
    /// subgroup they generate, each stage only while it fits the budget.
    BoundarySearch is_boundary(const UnitBarChain& c) const {
        if (c.degree() >= 1 && !bar_d(c, unit_ops()).empty()) throw InvalidInput("is_boundary: input is not a cycle");
        BoundarySearch out;
        if (c.empty()) {
            out.witness = UnitBarChain(c.degree() + 1);
            return out;
        }
        std::set<Elem> alpha;
        for (const auto& [t, k] : c.terms())
            for (Elem e : t) {
                alpha.insert(e);
                alpha.insert(R_->inv(e));
            }
        std::vector<std::vector<Elem>> stages{{alpha.begin(), alpha.end()}};
        std::set<Elem> prods = alpha;
        for (Elem x : alpha)
            for (Elem y : alpha) prods.insert(R_->mul(x, y));
        stages.emplace_back(prods.begin(), prods.end());
        stages.push_back(subgroup_generated(stages.front()));
        for (std::size_t i = 0; i < stages.size(); ++i) {
            if (i > 0 && stages[i].size() == stages[i - 1].size()) continue;
            const auto key = std::make_pair(stages[i], c.degree());
            auto it = solvers_.find(key);
            if (it == solvers_.end())
                it = solvers_.emplace(key, std::make_shared<BoundarySolver>(*R_, stages[i], c.degree(), budget_)).first;
            if (it->second->over_budget()) {
                out.basis_size = std::max(out.basis_size, it->second->basis_size());
                break;
            }
            out.basis_size = it->second->basis_size();
            out.witness = it->second->solve(c);
            if (out.witness) break;
        }
        if (out.witness && bar_d(*out.witness, unit_ops()) != c) throw ConstructionError("boundary witness does not verify");
        return out;
    }

    std::string format(const UnitBarChain& c) const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [t, k] : c.terms()) {
            os << (k < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (k != 1 && k != -1) os << (k < 0 ? -k : k);
            os << '[';
            for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "|" : "") << R_->format(t[i]);
            os << ']';
            first = false;
        }
        return first ? "0" : os.str();
    }

  private:
    template <class Torus>
    UnitBarChain push(const TensorChain& ch, Torus torus) const {
        UnitBarChain out(ch.degree());
        UnitOps u = unit_ops();
        for (const auto& [key, c] : ch.terms()) {
            const Mat2 k = G_.inv(witness(key.first));
            const auto homog = bar_to_homog_tuple(key.second, mat_ops(), k);
            std::vector<Elem> diag;
            diag.reserve(homog.size());
            for (const auto& g : homog) diag.push_back(torus(g));
            out.add(homog_to_bar_tuple(diag, u).second, c);
        }
        return out;
    }

    RingPtr R_;
    SL2 G_;
    LineSpace L_;
    std::size_t budget_;
    mutable std::map<std::pair<std::vector<Elem>, std::size_t>, std::shared_ptr<BoundarySolver>> solvers_;
};

}  // namespace rbw
