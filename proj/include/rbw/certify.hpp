#pragma once

// Explicit cycles of the spectral sequence for SL_2 acting on X_*(A^2),
// their pushdowns to the torus, and the order bookkeeping of the
// refined Bloch-Wigner sequence.

#include "rbw/abelian.hpp"
#include "rbw/bar_homology.hpp"
#include "rbw/chains.hpp"
#include "rbw/scissors.hpp"
#include "rbw/unit_group.hpp"

#include <atomic>
#include <numeric>
#include <thread>

namespace rbw {

enum class Verdict { exact_match, match_after_witness, match_after_boundary_solve, fail };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::exact_match: return "exact-match";
        case Verdict::match_after_witness: return "match-after-witness";
        case Verdict::match_after_boundary_solve: return "match-after-boundary-solve";
        case Verdict::fail: return "fail";
    }
    return "?";
}

struct Stage {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct Certificate {
    std::string identity, ring;
    std::vector<std::pair<std::string, Elem>> params;
    std::vector<std::pair<std::string, TensorChain>> tensors;  // intermediate chains over SL_2
    std::vector<std::pair<std::string, UnitBarChain>> chains;  // intermediate chains over A^x
    UnitBarChain computed, expected;
    std::vector<std::pair<std::string, UnitBarChain>> witnesses;
    UnitBarChain residual;
    std::vector<Stage> stages;
    std::vector<std::string> notes;
    Verdict verdict = Verdict::fail;

    bool passed() const {
        if (verdict == Verdict::fail) return false;
        for (const auto& s : stages)
            if (!s.ok) return false;
        return true;
    }
    Certificate& stage(std::string name, bool ok, std::string detail = {}) {
        stages.push_back({std::move(name), ok, std::move(detail)});
        return *this;
    }
};

/// Product of the letters: the class of a 1-chain in H_1(A^x) = A^x.
inline Elem h1_class(const Ring& R, const UnitBarChain& c) {
    if (c.degree() != 1) throw InvalidInput("H_1 class needs a 1-chain");
    Elem out = R.one();
    for (const auto& [t, k] : c.terms()) {
        const Elem x = k < 0 ? R.inv(t[0]) : t[0];
        for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out = R.mul(out, x);
    }
    return out;
}

class Certifier {
  public:
    explicit Certifier(RingPtr ring, std::size_t solver_budget = 5000)
        : R_(std::move(ring)), C_(R_, solver_budget) {}

    const Ring& ring() const { return *R_; }
    const ChainCalculus& calculus() const { return C_; }

    std::vector<Elem> units() const { return R_->units().units; }

    // --- building blocks -------------------------------------------------

    Mat2 D(Elem a) const { return C_.sl2().diag(a); }
    Mat2 W(Elem a) const { return C_.sl2().mul(C_.sl2().w(), D(a)); }
    XGen Y0() const { return {C_.lines().infinity(), C_.lines().zero()}; }
    XGen Y1() const { return {C_.lines().zero(), C_.lines().infinity()}; }
    XGen X(Elem z) const { return {C_.lines().infinity(), C_.lines().zero(), C_.lines().affine(z)}; }

    TensorChain tensor(const BarChain& b, const XGen& x) const {
        TensorChain t(b.degree(), x.size() - 1);
        for (const auto& [tu, c] : b.terms()) C_.add(t, tu, x, c);
        return t;
    }
    TensorChain on_Y(const BarChain& b) const { return tensor(b, Y0()) + tensor(b, Y1()); }

    /// [wz|wz] (x) d_2(X_z)
    TensorChain boundary_term(Elem z) const {
        TensorChain x(2, 2);
        C_.add(x, {W(z), W(z)}, X(z), 1);
        return C_.d_x(x);
    }

    TensorChain lambda(Elem a, Elem b) const {
        const Mat2 w = C_.sl2().w();
        const Elem ab = R_->mul(a, b);
        BarChain y(2, {{{D(a), D(b)}, 1}, {{w, D(ab)}, 1}, {{w, D(a)}, -1}, {{w, D(b)}, -1}});
        return on_Y(y) + boundary_term(ab) - boundary_term(a) - boundary_term(b) + boundary_term(R_->one());
    }

    /// theta_z; printed = true keeps the misprinted g_z in the fifth term.
    BarChain theta(Elem z, bool printed = false) const {
        const SL2& G = C_.sl2();
        const Mat2 gz = G.g(z), gi = G.inv(gz), h = G.h(z), wz = W(z), Z = D(z), Zi = D(R_->inv(z));
        return BarChain(3, {{{gi, wz, wz}, 1},
                            {{h, wz, wz}, -1},
                            {{Zi, gi, wz}, 1},
                            {{Z, h, wz}, -1},
                            {{Z, Zi, printed ? gz : gi}, 1},
                            {{Zi, Z, h}, -1},
                            {{Zi, Z, Zi}, 1}});
    }

    BarChain phi(Elem a, Elem b, Elem c) const {
        const Ring& R = *R_;
        const Elem ab = R.mul(a, b), ac = R.mul(a, c), bc = R.mul(b, c), abc = R.mul(ab, c);
        return theta(abc) - theta(ab) - theta(bc) - theta(ac) + theta(a) + theta(b) + theta(c) - theta(R.one());
    }

    BarChain psi(Elem a, Elem b, Elem c) const {
        const Ring& R = *R_;
        const Elem ab = R.mul(a, b), ac = R.mul(a, c), bc = R.mul(b, c), abc = R.mul(ab, c);
        const Mat2 A = D(a), B = D(b), Cc = D(c), AB = D(ab), w = C_.sl2().w();
        BarChain p(3);
        auto t = [&](const Mat2& x, const Mat2& y, const Mat2& z, std::int64_t s) { p.add({x, y, z}, s); };
        t(W(ab), W(ab), Cc, 1), t(W(a), W(a), Cc, -1), t(W(b), W(b), Cc, -1), t(w, w, Cc, 1);
        t(Cc, W(abc), W(abc), 1), t(Cc, W(ac), W(ac), -1), t(Cc, W(bc), W(bc), -1), t(Cc, W(c), W(c), 1);
        t(AB, W(ab), Cc, 1), t(A, W(a), Cc, -1), t(A, Cc, W(ac), -1);
        t(AB, Cc, W(abc), 1), t(Cc, AB, W(abc), -1), t(Cc, A, W(ac), 1);
        t(B, W(b), Cc, -1), t(B, Cc, W(bc), -1), t(Cc, B, W(bc), 1);
        t(B, A, Cc, -1), t(B, Cc, A, 1), t(Cc, B, A, -1);
        return p;
    }

    /// ([w|ab|c] - [w|a|c] - [w|b|c]) (x) Y + (Phi + Psi) (x) (inf, 0)
    TensorChain lambda_lift(Elem a, Elem b, Elem c) const {
        const Mat2 w = C_.sl2().w();
        const Elem ab = R_->mul(a, b);
        BarChain y(3, {{{w, D(ab), D(c)}, 1}, {{w, D(a), D(c)}, -1}, {{w, D(b), D(c)}, -1}});
        return on_Y(y) + tensor(phi(a, b, c) + psi(a, b, c), Y0());
    }

    UnitBarChain d3_witness(Elem a, Elem b) const {
        const Elem ai = R_->inv(a), bi = R_->inv(b);
        return UnitBarChain(3, {{{ai, bi, R_->mul(a, b)}, 1}, {{bi, b, a}, -1}});
    }

    UnitBarChain d4_witness(Elem a, Elem b, Elem c) const {
        const Ring& R = *R_;
        const Elem ab = R.mul(a, b), ac = R.mul(a, c), bc = R.mul(b, c), abc = R.mul(ab, c);
        const Elem ai = R.inv(a), bi = R.inv(b), ci = R.inv(c), abi = R.inv(ab), aci = R.inv(ac), bci = R.inv(bc),
                   abci = R.inv(abc);
        UnitBarChain q(4);
        auto t = [&](Elem x, Elem y, Elem z, Elem u, std::int64_t s) { q.add({x, y, z, u}, s); };
        t(c, ci, abc, abci, -1), t(c, ci, ac, aci, 1), t(c, ci, bc, bci, 1), t(c, ci, ai, ac, -1);
        t(c, ci, c, ci, -1), t(c, ci, bi, bc, -1), t(ci, c, abci, abc, 1), t(ac, ai, ci, ac, 1);
        t(abc, abi, ci, abc, -1), t(bc, bi, ci, bc, 1), t(c, ab, abi, ab, 1), t(c, b, bi, b, -1);
        t(c, a, ai, a, -1), t(c, a, b, abi, -1), t(a, b, c, abci, -1), t(abc, bi, ai, ci, 1);
        t(abc, bi, ci, ai, -1), t(a, c, ci, ai, 1), t(a, bc, bi, ci, -1), t(a, c, b, bi, 1);
        t(ac, b, bi, ai, 1), t(a, bc, bci, ai, -1), t(b, c, bci, ai, -1), t(c, ci, bi, ai, 1);
        t(c, ci, c, abci, -1);
        return q;
    }

    /// -(a^b^c) written out as six signed permutations.
    UnitBarChain antisymmetrized(Elem a, Elem b, Elem c) const {
        return UnitBarChain(3, {{{a, b, c}, -1}, {{c, a, b}, -1}, {{b, c, a}, -1},
                                {{b, a, c}, 1}, {{c, b, a}, 1}, {{a, c, b}, 1}});
    }

    // --- certificates ----------------------------------------------------

    Certificate d1_11_kernel_check() const {
        Certificate cert = start("d1_11", {});
        const Ring& R = *R_;
        const auto& u = R.units();
        UnitBarChain ker(1), mu2(1);
        bool all = true;
        std::size_t shown = 0;
        for (Elem a : u.units) {
            TensorChain t(1, 1);
            C_.add(t, {D(a)}, Y0(), 1);
            const UnitBarChain img = C_.push_X0_to_T(C_.d_x(t));
            const Elem cls = h1_class(R, img), want = R.inv(R.mul(a, a));
            if (cls != want) {
                all = false;
                cert.notes.push_back("class of d([" + R.format(a) + "]) is " + R.format(cls) + ", not " + R.format(want));
            }
            if (shown < 4 && a != R.one()) {
                cert.chains.emplace_back("image of [" + R.format(a) + "]", img);
                ++shown;
            }
            if (cls == R.one() && a != R.one()) ker.add({a}, 1);
        }
        for (Elem b : u.mu2)
            if (b != R.one()) mu2.add({b}, 1);
        cert.stage("d([a] (x) (inf,0)) has class a^-2", all, std::to_string(u.units.size()) + " units");
        cert.notes.push_back("kernel and mu_2 written as sums of their non-identity elements");
        settle(cert, ker, mu2, {});
        return cert;
    }

    Certificate d1_21_check(Elem b) const {
        const Ring& R = *R_;
        if (!R.is_unit(b) || R.mul(b, b) != R.one()) throw InvalidInput(R.format(b) + " is not in mu_2");
        Certificate cert = start("d1_21", {{"b", b}});
        UnitBarChain first(1);
        bool cycles = true, classes = true;
        const auto& reps = R.units().class_reps;
        for (Elem a : reps) {
            TensorChain t(1, 2);
            C_.add(t, {D(b)}, X(a), 1);
            cycles = cycles && C_.d_bar(t).empty();
            const UnitBarChain img = C_.push_X1_to_T(C_.d_x(t));
            classes = classes && h1_class(R, img) == b;
            if (a == reps.front()) {
                cert.params.emplace_back("a", a);
                cert.tensors.emplace_back("[b] (x) d2(inf,0,a)", C_.d_x(t));
                first = img;
            }
        }
        cert.stage("[b] (x) (inf,0,a) is a cycle", cycles, std::to_string(reps.size()) + " square classes");
        cert.stage("class equals b for every square class a", classes);
        settle(cert, first, b == R.one() ? UnitBarChain(1) : UnitBarChain(1, {{{b}, 1}}), {});
        return cert;
    }

    Certificate d1_10_check() const {
        Certificate cert = start("d1_10", {});
        TensorChain t(0, 1);
        C_.add(t, {}, Y0(), 1);
        settle(cert, C_.push_X0_to_T(C_.d_x(t)), UnitBarChain(0), {});
        return cert;
    }

    /// [a|b] - [b|a] over the torus: its image is a cycle of the cyclic group, hence a boundary.
    Certificate d1_12_check(Elem a, Elem b) const {
        Certificate cert = start("d1_12", {{"a", a}, {"b", b}});
        TensorChain t(2, 1);
        C_.add(t, {D(a), D(b)}, Y0(), 1);
        C_.add(t, {D(b), D(a)}, Y0(), -1);
        cert.stage("input is a cycle", C_.d_bar(t).empty());
        settle(cert, C_.push_X0_to_T(C_.d_x(t)), UnitBarChain(2), {});
        return cert;
    }

    Certificate d1_22_certificate(Elem a, Elem b) const {
        require_char2_field();
        check_units({a, b});
        Certificate cert = start("d1_22", {{"a", a}, {"b", b}});
        const TensorChain l = lambda(a, b);
        cert.tensors.emplace_back("lambda(a,b)", l);
        cert.stage("lambda(a,b) is a cycle", C_.d_bar(l).empty());
        cert.stage("lambda(a,b) lies in B_2 (x) Z_1", C_.d_x(l).empty());
        const UnitBarChain pushed = C_.push_X1_to_T(l);
        cert.chains.emplace_back("pushed", pushed);
        settle(cert, pushed, UnitBarChain(2, {{{a, b}, 1}, {{b, a}, -1}}), d3_witness(a, b));
        return cert;
    }

    Certificate theta_certificate(Elem z) const {
        require_char2_field();
        check_units({z});
        Certificate cert = start("theta", {{"z", z}});
        const Elem zi = R_->inv(z);
        auto identity_holds = [&](const BarChain& th) {
            TensorChain rhs(2, 1);
            C_.add(rhs, {W(z), W(z)}, Y0(), 1);
            rhs += C_.d_bar(tensor(th, Y0()));
            return boundary_term(z) == rhs;
        };
        cert.stage("[wz|wz] (x) d2(X_z) = [wz|wz] (x) (inf,0) + d(theta_z (x) (inf,0))", identity_holds(theta(z)));
        const bool printed = identity_holds(theta(z, true));
        cert.notes.push_back(std::string("fifth term as printed, [z|z^-1|g_z]: identity ") +
                             (printed ? "holds" : "fails") + "; [z|z^-1|g_z^-1] is used");
        const UnitBarChain pushed = C_.push_X0_to_T(C_.d_x(tensor(theta(z), Y0())));
        cert.chains.emplace_back("pushed", pushed);
        const UnitBarChain other(3, {{{zi, z, zi}, -1}});
        const UnitBarChain diff = pushed - other;
        bool homologous = diff.empty();
        if (!homologous && bar_d(diff, C_.unit_ops()).empty()) homologous = C_.is_boundary(diff).found();
        cert.stage("homologous to -[z^-1|z|z^-1]", homologous);
        settle(cert, pushed, UnitBarChain(3, {{{z, zi, z}, 1}}), {});
        return cert;
    }

    Certificate d2_22_certificate(Elem a, Elem b, Elem c) const {
        require_char2_field();
        check_units({a, b, c});
        Certificate cert = start("d2_22", {{"a", a}, {"b", b}, {"c", c}});
        const Elem ab = R_->mul(a, b);
        const TensorChain L = lambda(ab, c) - lambda(a, c) - lambda(b, c);
        const TensorChain lift = lambda_lift(a, b, c);
        cert.tensors.emplace_back("Lambda(a,b,c)", L);
        cert.tensors.emplace_back("lift", lift);
        cert.stage("Lambda(a,b,c) = d(lift)", C_.d_bar(lift) == L);
        const TensorChain down = C_.d_x(lift);
        cert.tensors.emplace_back("d(lift) on X_0", down);
        const UnitBarChain pushed = C_.push_X0_to_T(down);
        cert.chains.emplace_back("pushed", pushed);
        settle(cert, pushed, antisymmetrized(a, b, c), d4_witness(a, b, c));
        return cert;
    }

  private:
    Certificate start(std::string identity, std::vector<std::pair<std::string, Elem>> params) const {
        Certificate c;
        c.identity = std::move(identity);
        c.ring = R_->name();
        c.params = std::move(params);
        return c;
    }

    void require_char2_field() const {
        if (R_->characteristic() != 2 || !R_->is_field())
            throw InvalidInput("certificates of this kind run over GF(2^k), not " + R_->name());
    }
    void check_units(std::initializer_list<Elem> xs) const {
        for (Elem x : xs)
            if (x >= R_->size() || !R_->is_unit(x)) throw InvalidInput("parameter is not a unit");
    }

    /// Exact, then with the printed witness, then with a solved boundary.
    void settle(Certificate& cert, UnitBarChain computed, UnitBarChain expected, std::optional<UnitBarChain> witness) const {
        cert.computed = std::move(computed);
        cert.expected = std::move(expected);
        if (cert.computed == cert.expected) {
            cert.verdict = Verdict::exact_match;
            return;
        }
        UnitBarChain got = cert.computed;
        if (witness) {
            cert.witnesses.emplace_back("printed", *witness);
            got += bar_d(*witness, C_.unit_ops());
            if (got == cert.expected) {
                cert.verdict = Verdict::match_after_witness;
                return;
            }
        }
        cert.residual = got - cert.expected;
        if (cert.residual.degree() > 0 && bar_d(cert.residual, C_.unit_ops()).empty()) {
            auto r = C_.is_boundary(cert.residual);
            if (r.found()) {
                cert.witnesses.emplace_back("solved", *r.witness);
                cert.verdict = Verdict::match_after_boundary_solve;
                return;
            }
            cert.notes.push_back("no boundary found within a basis of " + std::to_string(r.basis_size));
        } else {
            cert.notes.push_back("residual is not a cycle");
        }
        cert.verdict = Verdict::fail;
    }

    RingPtr R_;
    ChainCalculus C_;
};

/// Runs f(certifier, i) for i < n over a pool of workers, one certifier each.
template <class F>
std::vector<Certificate> certify_batch(const RingPtr& ring, std::size_t n, F f, unsigned threads = 0,
                                       std::size_t solver_budget = 5000) {
    std::vector<Certificate> out(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned id) {
        try {
            Certifier cf(ring, solver_budget);
            for (std::size_t i = next++; i < n; i = next++) out[i] = f(cf, i);
        } catch (...) {
            errors[id] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// --- conditions and the Bloch-Wigner table ---------------------------------

enum class FlagStatus { pass, fail, not_guaranteed };

inline const char* to_string(FlagStatus s) {
    switch (s) {
        case FlagStatus::pass: return "pass";
        case FlagStatus::fail: return "fail";
        case FlagStatus::not_guaranteed: return "not-guaranteed";
    }
    return "?";
}

struct ConditionFlag {
    FlagStatus status = FlagStatus::not_guaranteed;
    std::string basis;  // enumeration | audit | analytic | direct
    std::string detail;
    bool passed() const { return status == FlagStatus::pass; }
};

struct DirectCheck {
    std::size_t n = 0;
    std::vector<Integer> coinvariants;  // H_n(N)_T
    bool vanishes() const { return coinvariants.empty(); }
};

struct ConditionReport {
    std::string ring;
    std::size_t residue_field = 0;
    ConditionFlag c1, c2, c3;
    std::optional<bool> inequality;       // (p-1)d > 2n, n = 3
    std::vector<DirectCheck> direct;      // n = 2, 3 when run
    std::optional<ExactnessReport> audit;
    bool all_pass() const { return c1.passed() && c2.passed() && c3.passed(); }
};

struct ConditionLimits {
    std::uint64_t audit_tuples = 20'000;       // |X_4| ceiling for the exactness audit
    std::uint64_t direct_generators = 1'000'000;  // bar basis ceiling for H_n(N)_T
    bool direct_always = false;                // run the direct check even when the inequality holds
};

/// (A, +) as a product of cyclic groups whose mixed-radix encoding agrees with the ring's.
inline FiniteAbelianGroup additive_group(const Ring& R) {
    std::vector<std::uint32_t> orders;
    if (R.spec().kind == RingKind::residue_ring) {
        orders.push_back(R.size());
    } else {
        const std::uint32_t p = R.characteristic();
        for (std::uint32_t s = 1; s < R.size(); s *= p) orders.push_back(p);
    }
    FiniteAbelianGroup N(orders);
    for (Elem x = 0; x < R.size(); ++x)
        for (Elem y = 0; y < R.size(); ++y)
            if (N.add(x, y) != R.add(x, y)) throw ConstructionError("additive encoding of " + R.name() + " is not mixed radix");
    return N;
}

/// H_n(N)_T with T = A^x acting on N = (A, +) through b -> u^2 b.
inline DirectCheck unipotent_coinvariants(const Ring& R, std::size_t n, const BarLimits& lim = {}) {
    const FiniteAbelianGroup N = additive_group(R);
    const auto& u = R.units();
    if (std::gcd<std::uint64_t, std::uint64_t>(N.size(), u.units.size()) != 1)
        throw InvalidInput("|N| and |T| are not coprime over " + R.name());
    std::vector<BarComplex::Perm> actions;
    for (Elem x : u.units) {
        BarComplex::Perm p(R.size());
        const Elem s = R.mul(x, x);
        for (Elem b = 0; b < R.size(); ++b) p[b] = R.mul(s, b);
        actions.push_back(std::move(p));
    }
    return {n, bar_coinvariants_coprime(N, n, actions, lim)};
}

inline ConditionReport condition_report(const RingPtr& ring, const ConditionLimits& lim = {}) {
    const Ring& R = *ring;
    ConditionReport rep;
    rep.ring = R.name();
    rep.residue_field = R.residue_field_size();
    const std::size_t k = rep.residue_field;

    const auto& mu2 = R.units().mu2;
    rep.c1 = {mu2.size() == 1 ? FlagStatus::pass : FlagStatus::fail, "enumeration",
              "|mu_2| = " + std::to_string(mu2.size())};

    std::uint64_t x4 = 1;
    const std::uint64_t lines = LineSpace(ring).count();
    for (std::uint64_t i = 0; i < 5; ++i) x4 *= lines > i ? lines - i : 0;
    if (x4 <= lim.audit_tuples) {
        rep.audit = XComplex(ring, XLimits{lim.audit_tuples * 2}).exactness_audit(3);
        rep.c2 = {rep.audit->all_exact() ? FlagStatus::pass : FlagStatus::fail, "audit",
                  "homology of X_* -> Z through dimension 3"};
    } else if (k >= 4) {
        rep.c2 = {FlagStatus::pass, "analytic", "residue field of order " + std::to_string(k) + " >= 4"};
    } else {
        rep.c2 = {FlagStatus::not_guaranteed, "analytic", "residue field too small and audit over budget"};
    }

    if (R.is_field()) {
        std::uint64_t p = R.characteristic(), d = 0;
        for (std::uint64_t s = 1; s < k; s *= p) ++d;
        rep.inequality = (p - 1) * d > 6;
    }
    const bool coprime = std::gcd<std::uint64_t, std::uint64_t>(R.size(), R.units().units.size()) == 1;
    std::uint64_t need = 1;
    for (int i = 0; i < 4; ++i) need *= R.size() - 1;
    const bool feasible = coprime && need <= lim.direct_generators;
    if (feasible && (lim.direct_always || !rep.inequality.value_or(false))) {
        BarLimits bl{lim.direct_generators};
        for (std::size_t n : {2, 3}) rep.direct.push_back(unipotent_coinvariants(R, n, bl));
    }
    bool direct_ok = !rep.direct.empty();
    std::string nonzero;
    for (const auto& d : rep.direct)
        if (!d.vanishes()) {
            direct_ok = false;
            nonzero += (nonzero.empty() ? "H_" : ", H_") + std::to_string(d.n) + "(N)_T = " + AbPresentation::describe_invariants(d.coinvariants);
        }
    if (!rep.direct.empty() && !direct_ok)
        rep.c3 = {FlagStatus::fail, "direct", nonzero};
    else if (rep.inequality.value_or(false))
        rep.c3 = {FlagStatus::pass, rep.direct.empty() ? "analytic" : "analytic+direct", "(p-1)d > 6"};
    else if (direct_ok)
        rep.c3 = {FlagStatus::pass, "direct", "H_2(N)_T = H_3(N)_T = 0"};
    else
        rep.c3 = {FlagStatus::not_guaranteed, "analytic",
                  std::string(rep.inequality ? "(p-1)d <= 6" : "inequality needs a domain") +
                      (coprime ? " and the direct check exceeds the bar budget" : " and |N|, |T| are not coprime")};
    return rep;
}

struct BWReport {
    std::string ring;
    ConditionReport conditions;
    std::vector<Integer> mu;             // invariant factors of mu(A)
    std::vector<Integer> tor, tor_fixed;  // Tor_1(mu, mu) and its Sigma_2' fixed points
    std::vector<Integer> rb, rb_check;   // RB(A) by the sparse and the lattice SNF routes
    std::vector<Integer> b;              // B(A)
    bool rb_equals_b = false;
    std::optional<Integer> predicted_h3;  // |Tor| |RB| when every flag passes and A is a domain
    std::string prediction_note;
    bool snf_paths_agree() const { return rb == rb_check; }
};

struct BlochInvariants {
    std::vector<Integer> rb, rb_check, b;
};

inline BlochInvariants bloch_invariants(const RingPtr& ring) {
    const ScissorsResult s = Scissors(ring).bloch_groups();
    return {s.RB.group.invariants(), s.RB.group.invariants_via(SnfPath::lattice), s.B.group.invariants()};
}

inline BWReport bw_report(const RingPtr& ring, const ConditionLimits& lim = {}, std::optional<BlochInvariants> known = {}) {
    BWReport rep;
    rep.ring = ring->name();
    rep.conditions = condition_report(ring, lim);
    const UnitGroupStructure ug = unit_group_structure(*ring);
    rep.mu = ug.group.invariants();
    const TorData t = tor1(ug.group);
    rep.tor = t.tor.invariants();
    rep.tor_fixed = t.fixed.group.invariants();
    const BlochInvariants s = known ? *known : bloch_invariants(ring);
    rep.rb = s.rb;
    rep.rb_check = s.rb_check;
    rep.b = s.b;
    rep.rb_equals_b = rep.rb == rep.b;
    if (!rep.conditions.all_pass()) {
        rep.prediction_note = "not all conditions pass";
    } else if (!ring->is_field()) {
        rep.prediction_note = "A is not a domain; only Tor^{Sigma_2'} -> H_3 -> RB -> 0 is available";
    } else {
        rep.predicted_h3 = order_of(rep.tor) * order_of(rep.rb);
        rep.prediction_note = "consequence of 0 -> Tor_1(mu, mu) -> H_3(SL_2(A)) -> RB(A) -> 0; H_3 itself is not computed";
    }
    return rep;
}

inline std::vector<BWReport> bw_table(const std::vector<RingPtr>& rings, const ConditionLimits& lim = {}) {
    std::vector<BWReport> out;
    for (const auto& r : rings) out.push_back(bw_report(r, lim));
    return out;
}

inline std::string scope_note_d1_13() {
    return "d1_13 is multiplication by 2 on the wedge cube of A^x, which is 0 for cyclic A^x; "
           "no non-cyclic case is constructed, the abelian H_3 decomposition is checked separately";
}

}  // namespace rbw
