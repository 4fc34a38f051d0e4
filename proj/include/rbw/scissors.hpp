#pragma once

// Scissors congruence groups of a finite ring: P(A), RP(A), the maps
// lambda, lambda_1, lambda_2, and the subgroups B(A), RP_1(A), RB(A).

#include "rbw/abelian.hpp"
#include "rbw/digest.hpp"
#include "rbw/ring.hpp"
#include "rbw/unit_group.hpp"

#include <array>

namespace rbw {

/// Element of R_A = Z[G_A], coefficients indexed by square class.
struct GroupRingElem {
    std::vector<std::int64_t> coef;

    static GroupRingElem basis(std::size_t classes, int c) {
        GroupRingElem e{std::vector<std::int64_t>(classes, 0)};
        e.coef[static_cast<std::size_t>(c)] = 1;
        return e;
    }
    std::int64_t augmentation() const {
        std::int64_t s = 0;
        for (auto x : coef) s += x;
        return s;
    }
    GroupRingElem operator+(const GroupRingElem& o) const {
        GroupRingElem r = *this;
        for (std::size_t i = 0; i < coef.size(); ++i) r.coef[i] += o.coef[i];
        return r;
    }
    GroupRingElem operator-(const GroupRingElem& o) const {
        GroupRingElem r = *this;
        for (std::size_t i = 0; i < coef.size(); ++i) r.coef[i] -= o.coef[i];
        return r;
    }
    bool operator==(const GroupRingElem&) const = default;

    GroupRingElem times(const GroupRingElem& o, const UnitData& u) const {
        GroupRingElem r{std::vector<std::int64_t>(coef.size(), 0)};
        for (std::size_t i = 0; i < coef.size(); ++i)
            for (std::size_t j = 0; j < coef.size(); ++j)
                if (coef[i] != 0 && o.coef[j] != 0) r.coef[static_cast<std::size_t>(u.class_mul[i][j])] += coef[i] * o.coef[j];
        return r;
    }

    SparseRow row() const {
        SparseRow r;
        for (std::size_t i = 0; i < coef.size(); ++i)
            if (coef[i] != 0) r.emplace_back(static_cast<std::uint32_t>(i), Integer(static_cast<long>(coef[i])));
        return r;
    }
};

/// One signed, class-weighted symbol of a five-term relator.
struct RelatorTerm {
    int sign;    // +1 or -1
    int cls;     // square class multiplying the symbol
    Elem symbol; // element of W_A
};

struct ScissorsResult {
    std::string ring;
    std::size_t w_count = 0, class_count = 0, relator_pairs = 0;
    AbPresentation P, RP, S2;
    AbMap lambda, lambda1, lambda2, collapse;
    Subquotient B, RP1, RB;
    std::vector<Integer> rb_by_intersection;
    bool lambda_kills_relators = false;
    bool lambda1_kills_relators = false;
    bool lambda2_kills_relators = false;
    bool lambda1_lands_in_I2 = false;
    bool lambda2_factors_through_P = false;
    bool rb_two_ways_agree = false;
    bool chain_verified = false;  // RB in RP_1 in RP, lambda_1 and lambda_2 vanish where they should
    std::string p_digest, rp_digest;
};

struct CoinvariantsReport {
    std::vector<Integer> coinvariants, p_invariants;
    bool collapse_is_isomorphism = false;
    bool passed() const { return collapse_is_isomorphism && coinvariants == p_invariants; }
};

struct Gl2DeltaReport {
    std::size_t relators = 0, killed = 0;
    bool companion_is_homomorphism = false;
    bool wedge_component_zero = false;  // every [a] lands in 0 on the wedge side
    bool passed() const { return relators == killed && companion_is_homomorphism; }
};

class Scissors {
  public:
    explicit Scissors(RingPtr ring) : R_(std::move(ring)), u_(R_->units()), ug_(unit_group_structure(*R_)) {}

    const Ring& ring() const { return *R_; }
    const UnitData& units() const { return u_; }
    const UnitGroupStructure& unit_group() const { return ug_; }
    std::size_t w_count() const { return u_.wset.size(); }
    std::size_t class_count() const { return u_.class_count(); }

    std::uint32_t p_index(Elem a) const { return static_cast<std::uint32_t>(w_index(a)); }
    std::uint32_t rp_index(int cls, Elem a) const {
        return static_cast<std::uint32_t>(static_cast<std::size_t>(cls) * w_count() + w_index(a));
    }

    /// Ordered pairs (a, b), a != b, with a, b, a/b in W_A, ascending.
    std::vector<std::pair<Elem, Elem>> relator_pairs() const {
        std::vector<std::pair<Elem, Elem>> out;
        for (Elem a : u_.wset)
            for (Elem b : u_.wset)
                if (a != b && in_w(R_->div(a, b))) out.emplace_back(a, b);
        return out;
    }

    /// [a] - [b] + <a>[b/a] - <a^{-1}-1>[(1-a^{-1})/(1-b^{-1})] + <1-a>[(1-a)/(1-b)]
    std::array<RelatorTerm, 5> refined_relator(Elem a, Elem b) const {
        const Ring& R = *R_;
        const Elem one = R.one();
        const Elem ai = R.inv(a), bi = R.inv(b);
        std::array<RelatorTerm, 5> t{{
            {+1, class_of(one), a},
            {-1, class_of(one), b},
            {+1, class_of(a), R.div(b, a)},
            {-1, class_of(R.sub(ai, one)), R.div(R.sub(one, ai), R.sub(one, bi))},
            {+1, class_of(R.sub(one, a)), R.div(R.sub(one, a), R.sub(one, b))},
        }};
        for (const auto& term : t)
            if (!in_w(term.symbol)) throw ConstructionError("relator symbol outside W_A");
        return t;
    }

    AbPresentation p_presentation() const {
        std::vector<SparseRow> rels;
        for (auto [a, b] : relator_pairs()) {
            std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
            for (const auto& t : refined_relator(a, b)) terms.emplace_back(p_index(t.symbol), t.sign);
            rels.push_back(make_row(terms));
        }
        return AbPresentation(w_count(), std::move(rels));
    }

    /// Z-relations g * (refined relator) for every class g and pair (a, b).
    AbPresentation rp_presentation() const {
        std::vector<SparseRow> rels;
        const auto pairs = relator_pairs();
        for (std::size_t g = 0; g < class_count(); ++g)
            for (auto [a, b] : pairs) {
                std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
                for (const auto& t : refined_relator(a, b))
                    terms.emplace_back(rp_index(u_.class_mul[g][static_cast<std::size_t>(t.cls)], t.symbol), t.sign);
                rels.push_back(make_row(terms));
            }
        return AbPresentation(class_count() * w_count(), std::move(rels));
    }

    /// Generator permutation matrices of the G_A action on RP(A), one per class.
    std::vector<std::vector<SparseRow>> rp_actions() const {
        std::vector<std::vector<SparseRow>> acts;
        for (std::size_t h = 0; h < class_count(); ++h) {
            std::vector<SparseRow> m;
            for (std::size_t g = 0; g < class_count(); ++g)
                for (Elem a : u_.wset) m.push_back({{rp_index(u_.class_mul[h][g], a), Integer(1)}});
            acts.push_back(std::move(m));
        }
        return acts;
    }

    MultilinearResult sym2() const { return multilinear(ug_.group, MultilinearOp::sym2Z); }
    MultilinearResult wedge2() const { return multilinear(ug_.group, MultilinearOp::wedge2); }

    /// a (x) b in the generator coordinates of a square of the unit group.
    SparseRow tensor_row(const MultilinearResult& M, Elem a, Elem b) const {
        const auto& ca = ug_.of(u_, a);
        const auto& cb = ug_.of(u_, b);
        std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
        for (std::size_t i = 0; i < ca.size(); ++i)
            for (std::size_t j = 0; j < cb.size(); ++j)
                if (ca[i] != 0 && cb[j] != 0) terms.emplace_back(M.index(i, j), ca[i] * cb[j]);
        return make_row(terms);
    }

    /// <<a>><<1-a>> in R_A.
    GroupRingElem lambda1_value(Elem a) const {
        const Ring& R = *R_;
        const std::size_t G = class_count();
        Elem b = R.sub(R.one(), a);
        return GroupRingElem::basis(G, class_of(R.mul(a, b))) - GroupRingElem::basis(G, class_of(a)) -
               GroupRingElem::basis(G, class_of(b)) + GroupRingElem::basis(G, class_of(R.one()));
    }

    /// I_A^2 as a sublattice of R_A = Z^{G_A}.
    Lattice augmentation_square() const {
        const std::size_t G = class_count();
        Lattice L(G);
        const int e = class_of(R_->one());
        for (std::size_t g = 0; g < G; ++g)
            for (std::size_t h = 0; h < G; ++h) {
                auto x = GroupRingElem::basis(G, static_cast<int>(g)) - GroupRingElem::basis(G, e);
                auto y = GroupRingElem::basis(G, static_cast<int>(h)) - GroupRingElem::basis(G, e);
                L.insert(x.times(y, u_).row());
            }
        return L;
    }

    ScissorsResult bloch_groups() const {
        ScissorsResult res;
        res.ring = R_->name();
        res.w_count = w_count();
        res.class_count = class_count();
        res.relator_pairs = relator_pairs().size();
        res.P = p_presentation();
        res.RP = rp_presentation();
        res.p_digest = matrix_digest(res.P.relations(), res.P.generators());
        res.rp_digest = matrix_digest(res.RP.relations(), res.RP.generators());
        auto S2 = sym2();
        res.S2 = S2.group;
        const std::size_t G = class_count();

        std::vector<SparseRow> lam, lam1, lam2, coll;
        for (Elem a : u_.wset) lam.push_back(tensor_row(S2, a, R_->sub(R_->one(), a)));
        for (std::size_t g = 0; g < G; ++g)
            for (std::size_t w = 0; w < w_count(); ++w) {
                Elem a = u_.wset[w];
                lam1.push_back(GroupRingElem::basis(G, static_cast<int>(g)).times(lambda1_value(a), u_).row());
                lam2.push_back(lam[w]);
                coll.push_back({{static_cast<std::uint32_t>(w), Integer(1)}});
            }
        AbPresentation RA = AbPresentation::free(G);
        res.lambda = AbMap(res.P, res.S2, lam, false);
        res.lambda1 = AbMap(res.RP, RA, lam1, false);
        res.lambda2 = AbMap(res.RP, res.S2, lam2, false);
        res.collapse = AbMap(res.RP, res.P, coll, false);
        res.lambda_kills_relators = res.lambda.violated_relations().empty();
        res.lambda1_kills_relators = res.lambda1.violated_relations().empty();
        res.lambda2_kills_relators = res.lambda2.violated_relations().empty();
        if (!res.lambda_kills_relators || !res.lambda1_kills_relators || !res.lambda2_kills_relators)
            throw ConstructionError("a five-term relator has nonzero image under lambda in " + res.ring);
        if (!res.collapse.violated_relations().empty()) throw ConstructionError("RP -> P does not respect relations");

        Lattice I2 = augmentation_square();
        res.lambda1_lands_in_I2 = true;
        for (const auto& r : lam1)
            if (!I2.contains(r)) res.lambda1_lands_in_I2 = false;
        if (!res.lambda1_lands_in_I2) throw ConstructionError("lambda_1 image outside I_A^2");

        auto composite = res.collapse.then(res.lambda);
        res.lambda2_factors_through_P = composite.matrix() == res.lambda2.matrix();

        res.B = kernel(res.lambda);
        res.RP1 = kernel(res.lambda1);
        auto lam2_on_rp1 = restrict_to(res.lambda2, res.RP1.map);
        auto rb = kernel(lam2_on_rp1);
        res.RB = Subquotient{rb.group, rb.map.then(res.RP1.map), {}};
        for (const auto& v : rb.basis) res.RB.basis.push_back(row_times(v, res.RP1.basis));

        Lattice K = Lattice::intersection(preimage_of_zero(res.lambda1), preimage_of_zero(res.lambda2));
        std::vector<SparseRow> rels;
        for (const auto& r : res.RP.relations()) {
            auto c = K.coordinates(r);
            if (!c) throw ConstructionError("RP relation outside ker(lambda_1) meet ker(lambda_2)");
            if (!c->empty()) rels.push_back(*c);
        }
        res.rb_by_intersection = AbPresentation(K.rank(), std::move(rels)).invariants();
        res.rb_two_ways_agree = res.rb_by_intersection == res.RB.group.invariants();

        // RB -> RP_1 -> RP, with lambda_1 zero on RP_1 and lambda_2 zero on RB.
        bool chain = res.RP1.map.then(res.lambda1).is_zero() && res.RB.map.then(res.lambda2).is_zero() &&
                     res.RB.map.then(res.lambda1).is_zero();
        Lattice rp1_lat = preimage_of_zero(res.lambda1);
        for (const auto& v : res.RB.basis) chain = chain && rp1_lat.contains(v);
        res.chain_verified = chain;
        return res;
    }

    /// RP(A)_{G_A} versus P(A).
    CoinvariantsReport coinvariants_check() const {
        CoinvariantsReport rep;
        auto RP = rp_presentation();
        auto P = p_presentation();
        std::vector<SparseRow> rels = RP.relations();
        for (const auto& act : rp_actions())
            for (std::size_t i = 0; i < act.size(); ++i) {
                SparseRow d = axpy(act[i], Integer(-1), SparseRow{{static_cast<std::uint32_t>(i), Integer(1)}});
                if (!d.empty()) rels.push_back(std::move(d));
            }
        AbPresentation co(RP.generators(), std::move(rels));
        std::vector<SparseRow> coll;
        for (std::size_t g = 0; g < class_count(); ++g)
            for (std::size_t w = 0; w < w_count(); ++w) coll.push_back({{static_cast<std::uint32_t>(w), Integer(1)}});
        AbMap f(co, P, std::move(coll), false);
        rep.coinvariants = co.invariants();
        rep.p_invariants = P.invariants();
        rep.collapse_is_isomorphism = f.violated_relations().empty() && is_isomorphism(f);
        return rep;
    }

    /// [a] -> (a ^ (1-a), -a (x) (1-a)) kills the five-term relators; the
    /// companion a ^ b -> (2 a ^ b, 2 a (x) b) is a homomorphism.
    Gl2DeltaReport gl2_delta_check() const {
        Gl2DeltaReport rep;
        auto W2 = wedge2();
        auto S2 = sym2();
        auto target = direct_sum(W2.group, S2.group);
        const auto off = static_cast<std::uint32_t>(W2.group.generators());
        auto P = p_presentation();
        std::vector<SparseRow> img;
        rep.wedge_component_zero = true;
        for (Elem a : u_.wset) {
            Elem b = R_->sub(R_->one(), a);
            SparseRow w = tensor_row(W2, a, b);
            if (!W2.group.is_zero(w)) rep.wedge_component_zero = false;
            SparseRow s = scaled(tensor_row(S2, a, b), Integer(-1));
            for (auto& [c, v] : s) w.emplace_back(c + off, v);
            img.push_back(std::move(w));
        }
        AbMap delta(P, target, std::move(img), false);
        rep.relators = P.relations().size();
        rep.killed = rep.relators - delta.violated_relations().size();
        std::vector<SparseRow> comp;
        for (std::size_t g = 0; g < W2.group.generators(); ++g)
            comp.push_back({{static_cast<std::uint32_t>(g), Integer(2)}, {static_cast<std::uint32_t>(g + off), Integer(2)}});
        AbMap companion(W2.group, target, std::move(comp), false);
        rep.companion_is_homomorphism = companion.violated_relations().empty();
        return rep;
    }

    static AbPresentation direct_sum(const AbPresentation& a, const AbPresentation& b) {
        std::vector<SparseRow> rels = a.relations();
        const auto off = static_cast<std::uint32_t>(a.generators());
        for (const auto& r : b.relations()) {
            SparseRow s;
            for (const auto& [c, v] : r) s.emplace_back(c + off, v);
            rels.push_back(std::move(s));
        }
        return AbPresentation(a.generators() + b.generators(), std::move(rels));
    }

    int class_of(Elem a) const {
        int c = u_.class_of[a];
        if (c < 0) throw InvalidInput("class of a non-unit");
        return c;
    }
    bool in_w(Elem a) const { return u_.w_index[a] >= 0; }

  private:
    std::size_t w_index(Elem a) const {
        int i = u_.w_index[a];
        if (i < 0) throw ConstructionError("symbol outside W_A");
        return static_cast<std::size_t>(i);
    }

    RingPtr R_;
    const UnitData& u_;
    UnitGroupStructure ug_;
};

}  // namespace rbw
