#pragma once

// The complex X_n(A^2) of (n+1)-tuples of lines, pairwise bases of A^2,
// over a finite local ring.

#include "rbw/abelian.hpp"
#include "rbw/mat2.hpp"
#include "rbw/ring.hpp"
#include "rbw/scissors.hpp"

#include <chrono>
#include <numeric>
#include <unordered_map>

namespace rbw {

/// P^1(A) for a local ring: lines (1, y), y in A, then (x, 1), x in the maximal ideal.
class LineSpace {
  public:
    explicit LineSpace(RingPtr ring) : R_(std::move(ring)) {
        if (!R_->is_local()) throw InvalidInput(R_->name() + " is not local");
        for (Elem y = 0; y < R_->size(); ++y) vecs_.push_back({1, y});
        nonunit_pos_.assign(R_->size(), UINT32_MAX);
        for (Elem x = 0; x < R_->size(); ++x)
            if (!R_->is_unit(x)) {
                nonunit_pos_[x] = static_cast<std::uint32_t>(vecs_.size());
                vecs_.push_back({x, 1});
            }
    }

    const Ring& ring() const { return *R_; }
    const RingPtr& ring_ptr() const { return R_; }
    std::uint32_t count() const { return static_cast<std::uint32_t>(vecs_.size()); }
    const Vec2& vec(std::uint32_t i) const { return vecs_[i]; }

    /// Line through a unimodular vector.
    std::uint32_t line_of(const Vec2& v) const {
        const Ring& R = *R_;
        if (R.is_unit(v.x)) return R.div(v.y, v.x);
        if (R.is_unit(v.y)) return nonunit_pos_[R.div(v.x, v.y)];
        throw InvalidInput("vector is not unimodular");
    }

    std::uint32_t infinity() const { return line_of({1, 0}); }
    std::uint32_t zero() const { return line_of({0, 1}); }
    std::uint32_t affine(Elem a) const { return line_of({1, a}); }

    Elem det(std::uint32_t i, std::uint32_t j) const {
        const Vec2 &u = vecs_[i], &v = vecs_[j];
        return R_->sub(R_->mul(u.x, v.y), R_->mul(u.y, v.x));
    }
    bool basis(std::uint32_t i, std::uint32_t j) const { return R_->is_unit(det(i, j)); }

    std::uint32_t act(const SL2& G, const Mat2& g, std::uint32_t line) const { return line_of(G.apply(g, vecs_[line])); }

    /// Permutation of all lines by g.
    std::vector<std::uint32_t> action_table(const SL2& G, const Mat2& g) const {
        std::vector<std::uint32_t> t(count());
        for (std::uint32_t i = 0; i < count(); ++i) t[i] = act(G, g, i);
        return t;
    }

    std::string format(std::uint32_t i) const {
        if (i == infinity()) return "inf";
        if (i == zero()) return "0";
        const Vec2& v = vecs_[i];
        return "<(" + R_->format(v.x) + "," + R_->format(v.y) + ")>";
    }

  private:
    RingPtr R_;
    std::vector<Vec2> vecs_;
    std::vector<std::uint32_t> nonunit_pos_;
};

struct XLimits {
    std::uint64_t max_tuples = 1'000'000;
};

using XGen = std::vector<std::uint32_t>;

/// Generators of X_n in lexicographic order of line indices.
class XLevel {
  public:
    XLevel() = default;
    XLevel(const LineSpace& L, std::size_t n, const XLimits& lim) : n_(n), base_(L.count()) {
        XGen cur;
        cur.reserve(n + 1);
        extend(L, cur, lim);
        for (std::size_t i = 0; i < gens_.size(); ++i) index_.emplace(key(gens_[i]), static_cast<std::uint32_t>(i));
    }

    std::size_t dim() const { return n_; }
    std::size_t size() const { return gens_.size(); }
    const XGen& operator[](std::size_t i) const { return gens_[i]; }
    const std::vector<XGen>& gens() const { return gens_; }

    std::optional<std::uint32_t> find(const XGen& t) const {
        auto it = index_.find(key(t));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::uint32_t at(const XGen& t) const {
        auto i = find(t);
        if (!i) throw InvalidInput("tuple is not a generator of X_" + std::to_string(n_));
        return *i;
    }

  private:
    std::uint64_t key(const XGen& t) const {
        std::uint64_t k = 0;
        for (auto x : t) k = k * base_ + x;
        return k;
    }

    void extend(const LineSpace& L, XGen& cur, const XLimits& lim) {
        if (cur.size() == n_ + 1) {
            gens_.push_back(cur);
            if (gens_.size() > lim.max_tuples) throw BudgetExceeded("X_" + std::to_string(n_) + " tuples", gens_.size(), lim.max_tuples);
            return;
        }
        for (std::uint32_t l = 0; l < L.count(); ++l) {
            bool ok = true;
            for (auto p : cur)
                if (p == l || !L.basis(p, l)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(l);
            extend(L, cur, lim);
            cur.pop_back();
        }
    }

    std::size_t n_ = 0;
    std::uint64_t base_ = 1;
    std::vector<XGen> gens_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

struct DimensionReport {
    std::size_t dim = 0;
    std::size_t generators = 0;
    std::size_t rank_out = 0;   // rank of d_dim (epsilon at 0)
    std::size_t rank_in = 0;    // rank of d_{dim+1}
    std::vector<Integer> homology;
    bool exact = false;
    double seconds = 0;
};

struct ExactnessReport {
    std::string ring;
    std::size_t residue_field = 0;
    std::vector<DimensionReport> dims;
    std::optional<std::string> budget_note;  // set when the audit stopped early
    bool all_exact() const {
        for (const auto& d : dims)
            if (!d.exact) return false;
        return !budget_note.has_value();
    }
};

class XComplex {
  public:
    explicit XComplex(RingPtr ring, XLimits lim = {}) : L_(std::move(ring)), lim_(lim) {}

    const LineSpace& lines() const { return L_; }
    const Ring& ring() const { return L_.ring(); }

    const XLevel& level(std::size_t n) const {
        while (levels_.size() <= n) levels_.emplace_back();
        if (!levels_[n]) levels_[n] = std::make_unique<XLevel>(L_, n, lim_);
        return *levels_[n];
    }

    /// Rows of d_n : X_n -> X_{n-1}; for n = 0 the augmentation X_0 -> Z.
    std::vector<SparseRow> boundary(std::size_t n) const {
        const XLevel& X = level(n);
        std::vector<SparseRow> rows;
        rows.reserve(X.size());
        if (n == 0) {
            for (std::size_t i = 0; i < X.size(); ++i) rows.push_back({{0u, Integer(1)}});
            return rows;
        }
        const XLevel& Y = level(n - 1);
        XGen f;
        for (const auto& t : X.gens()) {
            std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
            for (std::size_t i = 0; i <= n; ++i) {
                f.assign(t.begin(), t.end());
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                terms.emplace_back(Y.at(f), (i % 2 == 0) ? 1 : -1);
            }
            rows.push_back(make_row(terms));
        }
        return rows;
    }

    std::size_t target_size(std::size_t n) const { return n == 0 ? 1 : level(n - 1).size(); }

    /// d_{n-1} d_n = 0 (epsilon d_1 = 0 at n = 1).
    bool composite_zero(std::size_t n) const {
        if (n == 0) return true;
        auto outer = boundary(n - 1);
        for (const auto& r : boundary(n))
            if (!row_times(r, outer).empty()) return false;
        return true;
    }

    /// H_d = ker d_d / im d_{d+1} for d <= dmax, with the augmentation at d = 0.
    ExactnessReport exactness_audit(std::size_t dmax, bool timing = false) const {
        ExactnessReport rep;
        rep.ring = ring().name();
        rep.residue_field = ring().residue_field_size();
        try {
            std::size_t rank_out = integer_rank(boundary(0), 1);
            for (std::size_t d = 0; d <= dmax; ++d) {
                auto t0 = std::chrono::steady_clock::now();
                DimensionReport dr;
                dr.dim = d;
                dr.generators = level(d).size();
                dr.rank_out = rank_out;
                auto inv = invariant_factors(boundary(d + 1), level(d).size());
                dr.rank_in = inv.size();
                for (auto& x : inv)
                    if (x != 1) dr.homology.push_back(x);
                const std::size_t free = dr.generators - dr.rank_out - dr.rank_in;
                for (std::size_t i = 0; i < free; ++i) dr.homology.push_back(0);
                dr.exact = dr.homology.empty();
                if (timing) dr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                rep.dims.push_back(std::move(dr));
                rank_out = inv.size();
            }
        } catch (const BudgetExceeded& e) {
            rep.budget_note = e.what();
        }
        return rep;
    }

  private:
    LineSpace L_;
    XLimits lim_;
    mutable std::vector<std::unique_ptr<XLevel>> levels_;
};


/// Orbit of a tuple under SL_2(A): the standard representative
/// (inf, 0, <e1 + a e2>, <e1 + a x e2>, <e1 + a y e2>) cut to n + 1 entries,
/// a the chosen representative of its square class, and g with g.rep = tuple.
struct OrbitForm {
    std::size_t dim = 0;
    int cls = -1;  // set from dimension 2 on
    Elem a = 1;
    std::optional<Elem> x, y;
    Mat2 witness;

    bool same_orbit(const OrbitForm& o) const { return dim == o.dim && cls == o.cls && x == o.x && y == o.y; }
};

struct SignedTerm {
    int sign;
    int cls;
    Elem symbol;
};

struct Dbar4Report {
    std::vector<SparseRow> rows;        // one per (class, x, y), over G_A x W_A
    std::size_t match_plus = 0;         // pairs whose row equals the relator with +<1-x> last
    std::size_t match_minus = 0;        // ... with -<1-x> last
    std::size_t pairs = 0;
    int last_sign = 0;                  // sign of the <1-x>[(1-x)/(1-y)] term when consistent, else 0
    bool equivariant = false;           // <a>[x,y] row is <a> times the [x,y] row
    bool same_lattice_as_rp = false;    // rows span the relation lattice of RP(A)
    std::vector<Integer> invariants;    // of Z^{G x W} / rows
    std::vector<std::array<SignedTerm, 5>> sample;  // faces 0..4 of [x,y] for the first few pairs
};

struct StabilizerReport {
    std::size_t group_order = 0;
    std::size_t stab_inf = 0, stab_inf_zero = 0;
    std::vector<std::size_t> stab_triple;  // per class
    bool inf_is_borel = false, inf_zero_is_torus = false, triple_is_mu2 = false;
    std::size_t x2_orbits = 0;
    bool x2_orbits_match_classes = false;
    bool passed() const { return inf_is_borel && inf_zero_is_torus && triple_is_mu2 && x2_orbits_match_classes; }
};

struct CompositeReport {
    std::vector<GroupRingElem> images;  // image of <1>[x] per x in W_A
    int epsilon = 0;                    // images = epsilon * lambda_1 values (0 when all vanish)
    bool matches = false;
    bool equivariant = false;
};

struct TransversalReport {
    std::size_t dim = 0;
    std::size_t tuples = 0, orbits = 0, representatives = 0;
    std::size_t unmatched = 0;  // orbits containing no representative or a foreign canonical form
    bool passed() const { return orbits == representatives && unmatched == 0; }
};

class OrbitCalculus {
  public:
    explicit OrbitCalculus(RingPtr ring, XLimits lim = {})
        : X_(ring, lim), G_(ring), S_(ring), u_(ring->units()), lim_(lim) {}

    const XComplex& complex() const { return X_; }
    const LineSpace& lines() const { return X_.lines(); }
    const Scissors& scissors() const { return S_; }
    const SL2& sl2() const { return G_; }

    XGen standard(std::size_t dim, Elem a, Elem x = 0, Elem y = 0) const {
        const LineSpace& L = lines();
        const Ring& R = X_.ring();
        XGen t{L.infinity(), L.zero(), L.affine(a), L.affine(R.mul(a, x)), L.affine(R.mul(a, y))};
        t.resize(dim + 1);
        return t;
    }

    XGen apply(const Mat2& g, const XGen& t) const {
        XGen out(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) out[i] = lines().act(G_, g, t[i]);
        return out;
    }

    OrbitForm canonical_orbit(const XGen& t) const {
        const LineSpace& L = lines();
        const Ring& R = X_.ring();
        if (t.empty() || t.size() > 5) throw InvalidInput("orbit forms cover X_0 .. X_4");
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (!L.basis(t[i], t[j])) throw InvalidInput("tuple entries are not pairwise bases");
        OrbitForm f;
        f.dim = t.size() - 1;
        const Vec2 v0 = L.vec(t[0]);
        if (t.size() == 1) {
            f.witness = G_.complete_column(v0.x, v0.y);
        } else {
            const Vec2 v1 = L.vec(t[1]);
            const Elem di = R.inv(L.det(t[0], t[1]));
            Mat2 g{v0.x, R.mul(di, v1.x), v0.y, R.mul(di, v1.y)};
            if (t.size() >= 3) {
                const Vec2 w = G_.apply(G_.inv(g), L.vec(t[2]));
                const Elem a0 = R.div(w.y, w.x);
                f.cls = u_.class_of[a0];
                f.a = u_.class_reps[static_cast<std::size_t>(f.cls)];
                const auto s = u_.sqrt_of[R.div(f.a, a0)];
                if (s < 0) throw ConstructionError("square class representative is not a square multiple");
                g = G_.mul(g, G_.diag(static_cast<Elem>(s)));
                const Mat2 gi = G_.inv(g);
                auto param = [&](std::uint32_t line) {
                    const Vec2 v = G_.apply(gi, L.vec(line));
                    return R.div(R.div(v.y, v.x), f.a);
                };
                if (t.size() >= 4) f.x = param(t[3]);
                if (t.size() >= 5) f.y = param(t[4]);
            }
            f.witness = g;
        }
        if (!G_.is_sl2(f.witness) || apply(f.witness, standard(f.dim, f.a, f.x.value_or(0), f.y.value_or(0))) != t)
            throw ConstructionError("orbit witness does not reproduce the tuple");
        return f;
    }

    /// Faces 0..4 of <a>[x, y] in the form sign * <c>[z].
    std::array<SignedTerm, 5> dbar4_faces(Elem a, Elem x, Elem y) const {
        XGen t = standard(4, a, x, y);
        std::array<SignedTerm, 5> out{};
        for (std::size_t i = 0; i < 5; ++i) {
            XGen f = t;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            OrbitForm o = canonical_orbit(f);
            out[i] = {(i % 2 == 0) ? 1 : -1, o.cls, *o.x};
        }
        return out;
    }

    Dbar4Report dbar4_relator(std::size_t sample = 3) const {
        Dbar4Report rep;
        const Ring& R = X_.ring();
        const auto pairs = S_.relator_pairs();
        rep.pairs = pairs.size();
        std::vector<SparseRow> base;
        for (std::size_t k0 = 0; k0 < pairs.size(); ++k0) {
            const auto [x, y] = pairs[k0];
            auto faces = dbar4_faces(1, x, y);
            if (rep.sample.size() < sample) rep.sample.push_back(faces);
            std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
            for (const auto& f : faces) terms.emplace_back(S_.rp_index(f.cls, f.symbol), f.sign);
            SparseRow computed = make_row(terms);
            base.push_back(computed);
            auto formula = S_.refined_relator(x, y);
            std::vector<std::pair<std::uint32_t, std::int64_t>> plus, minus;
            for (std::size_t k = 0; k < 5; ++k) {
                plus.emplace_back(S_.rp_index(formula[k].cls, formula[k].symbol), formula[k].sign);
                minus.emplace_back(S_.rp_index(formula[k].cls, formula[k].symbol), k == 4 ? -formula[k].sign : formula[k].sign);
            }
            if (computed == make_row(plus)) ++rep.match_plus;
            if (computed == make_row(minus)) ++rep.match_minus;
            // Locate the <1-x>[(1-x)/(1-y)] face directly.
            const int c = S_.class_of(R.sub(1, x));
            const Elem z = R.div(R.sub(1, x), R.sub(1, y));
            int sign = 0;
            for (const auto& f : faces)
                if (f.cls == c && f.symbol == z && sign == 0) sign = f.sign;
            if (k0 == 0) rep.last_sign = sign;
            else if (sign != rep.last_sign) rep.last_sign = 0;
        }
        rep.equivariant = true;
        for (std::size_t cls = 0; cls < u_.class_count(); ++cls) {
            const Elem a = u_.class_reps[cls];
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                auto faces = dbar4_faces(a, pairs[k].first, pairs[k].second);
                std::vector<std::pair<std::uint32_t, std::int64_t>> terms, shifted;
                for (const auto& f : faces) terms.emplace_back(S_.rp_index(f.cls, f.symbol), f.sign);
                for (const auto& [col, v] : base[k]) {
                    const std::size_t w = col % S_.w_count(), c = col / S_.w_count();
                    shifted.emplace_back(S_.rp_index(u_.class_mul[cls][c], u_.wset[w]), v.get_si());
                }
                SparseRow row = make_row(terms);
                if (row != make_row(shifted)) rep.equivariant = false;
                rep.rows.push_back(std::move(row));
            }
        }
        const std::size_t n = u_.class_count() * S_.w_count();
        AbPresentation D(n, rep.rows);
        AbPresentation RP = S_.rp_presentation();
        rep.invariants = D.invariants();
        bool same = rep.invariants == RP.invariants();
        for (const auto& r : RP.relations()) same = same && D.is_zero(r);
        for (const auto& r : rep.rows) same = same && RP.is_zero(r);
        rep.same_lattice_as_rp = same;
        return rep;
    }

    /// The composite RP(A) = H_0(Z_2) -> H_0(X_2) = R_A on generators <a>[x].
    CompositeReport lambda1_composite_check() const {
        CompositeReport rep;
        const std::size_t G = u_.class_count();
        auto image = [&](Elem a, Elem x) {
            XGen t = standard(3, a, x);
            GroupRingElem e{std::vector<std::int64_t>(G, 0)};
            for (std::size_t i = 0; i < 4; ++i) {
                XGen f = t;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                e.coef[static_cast<std::size_t>(canonical_orbit(f).cls)] += (i % 2 == 0) ? 1 : -1;
            }
            return e;
        };
        rep.matches = true;
        rep.equivariant = true;
        for (Elem x : u_.wset) {
            GroupRingElem img = image(1, x), lam = S_.lambda1_value(x);
            rep.images.push_back(img);
            GroupRingElem zero{std::vector<std::int64_t>(G, 0)};
            if (lam == zero) {
                if (img != zero) rep.matches = false;
            } else {
                GroupRingElem neg = zero - lam;
                int e = img == lam ? 1 : (img == neg ? -1 : 0);
                if (e == 0 || (rep.epsilon != 0 && e != rep.epsilon)) rep.matches = false;
                if (rep.epsilon == 0) rep.epsilon = e;
            }
            for (std::size_t c = 0; c < G; ++c) {
                GroupRingElem shifted = GroupRingElem::basis(G, static_cast<int>(c)).times(img, u_);
                if (image(u_.class_reps[c], x) != shifted) rep.equivariant = false;
            }
        }
        return rep;
    }

    StabilizerReport stabilizer_check(std::uint64_t group_limit = 100'000) const {
        StabilizerReport rep;
        const LineSpace& L = lines();
        const Ring& R = X_.ring();
        auto elems = G_.enumerate(group_limit);
        rep.group_order = elems.size();
        const std::uint32_t inf = L.infinity(), zero = L.zero();
        rep.inf_is_borel = rep.inf_zero_is_torus = rep.triple_is_mu2 = true;
        rep.stab_triple.assign(u_.class_count(), 0);
        for (const auto& g : elems) {
            const bool fix_inf = L.act(G_, g, inf) == inf;
            const bool fix_zero = L.act(G_, g, zero) == zero;
            rep.stab_inf += fix_inf;
            rep.stab_inf_zero += fix_inf && fix_zero;
            if (fix_inf != G_.in_B(g)) rep.inf_is_borel = false;
            if ((fix_inf && fix_zero) != G_.in_T(g)) rep.inf_zero_is_torus = false;
            for (std::size_t c = 0; c < u_.class_count(); ++c) {
                const bool fix = fix_inf && fix_zero && L.act(G_, g, L.affine(u_.class_reps[c])) == L.affine(u_.class_reps[c]);
                rep.stab_triple[c] += fix;
                const bool scalar = g.b == 0 && g.c == 0 && g.a == g.d && R.mul(g.a, g.a) == R.one();
                if (fix != scalar) rep.triple_is_mu2 = false;
            }
        }
        auto orbits = orbit_ids(2);
        rep.x2_orbits = orbits.second;
        std::vector<int> seen(rep.x2_orbits, -1);
        bool ok = rep.x2_orbits == u_.class_count();
        const XLevel& X2 = X_.level(2);
        for (std::size_t i = 0; i < X2.size(); ++i) {
            int c = canonical_orbit(X2[i]).cls;
            auto& s = seen[orbits.first[i]];
            if (s == -1) s = c;
            else if (s != c) ok = false;
        }
        std::vector<int> cls(seen);
        std::sort(cls.begin(), cls.end());
        ok = ok && std::adjacent_find(cls.begin(), cls.end()) == cls.end();
        rep.x2_orbits_match_classes = ok;
        return rep;
    }

    /// Checks that <a>[x] (dim 3) or <a>[x, y] (dim 4) hit every SL_2 orbit exactly once.
    TransversalReport transversal(std::size_t dim) const {
        if (dim != 3 && dim != 4) throw InvalidInput("transversal check covers X_3 and X_4");
        TransversalReport rep;
        rep.dim = dim;
        const XLevel& X = X_.level(dim);
        rep.tuples = X.size();
        auto [ids, count] = orbit_ids(dim);
        rep.orbits = count;
        std::vector<XGen> reps;
        for (std::size_t c = 0; c < u_.class_count(); ++c) {
            const Elem a = u_.class_reps[c];
            if (dim == 3)
                for (Elem x : u_.wset) reps.push_back(standard(3, a, x));
            else
                for (auto [x, y] : S_.relator_pairs()) reps.push_back(standard(4, a, x, y));
        }
        rep.representatives = reps.size();
        std::vector<int> hit(count, -1);
        for (std::size_t r = 0; r < reps.size(); ++r) {
            auto o = ids[X.at(reps[r])];
            if (hit[o] != -1) ++rep.unmatched;
            hit[o] = static_cast<int>(r);
        }
        for (std::size_t i = 0; i < X.size(); ++i) {
            int r = hit[ids[i]];
            if (r < 0) continue;
            if (canonical_orbit(X[i]).same_orbit(canonical_orbit(reps[static_cast<std::size_t>(r)])) == false) ++rep.unmatched;
        }
        for (auto h : hit) rep.unmatched += (h == -1);
        return rep;
    }

    /// Elementary generators of SL_2(A): upper and lower unipotents.
    std::vector<Mat2> elementary_generators() const {
        std::vector<Mat2> gens;
        for (Elem b = 1; b < X_.ring().size(); ++b) {
            gens.push_back(G_.unipotent(b));
            gens.push_back({1, 0, b, 1});
        }
        return gens;
    }

    /// Orbit id per generator of X_n under SL_2(A), ids by least member.
    std::pair<std::vector<std::uint32_t>, std::size_t> orbit_ids(std::size_t n) const {
        const XLevel& X = X_.level(n);
        std::vector<std::vector<std::uint32_t>> tables;
        for (const auto& g : elementary_generators()) tables.push_back(lines().action_table(G_, g));
        std::vector<std::uint32_t> parent(X.size());
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&](std::uint32_t i) {
            while (parent[i] != i) i = parent[i] = parent[parent[i]];
            return i;
        };
        XGen img;
        for (std::size_t i = 0; i < X.size(); ++i)
            for (const auto& tb : tables) {
                img.resize(X[i].size());
                for (std::size_t k = 0; k < img.size(); ++k) img[k] = tb[X[i][k]];
                std::uint32_t a = find(static_cast<std::uint32_t>(i)), b = find(X.at(img));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        std::vector<std::uint32_t> ids(X.size());
        std::vector<std::uint32_t> remap(X.size(), UINT32_MAX);
        std::size_t count = 0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            auto r = find(static_cast<std::uint32_t>(i));
            if (remap[r] == UINT32_MAX) remap[r] = static_cast<std::uint32_t>(count++);
            ids[i] = remap[r];
        }
        return {ids, count};
    }

  private:
    XComplex X_;
    SL2 G_;
    Scissors S_;
    const UnitData& u_;
    XLimits lim_;
};

}  // namespace rbw
