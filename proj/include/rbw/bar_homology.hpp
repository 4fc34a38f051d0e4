#pragma once

// Integral homology of a finite abelian group from its normalized bar complex,
// optionally with automorphisms acting coordinatewise and their coinvariants.

#include "rbw/abelian.hpp"

#include <deque>
#include <numeric>

namespace rbw {

/// Z/n_1 + ... + Z/n_r with elements in mixed radix (first factor lowest).
class FiniteAbelianGroup {
  public:
    explicit FiniteAbelianGroup(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
        size_ = 1;
        for (auto o : orders_) {
            if (o == 0) throw InvalidInput("bar oracle needs a finite group");
            size_ *= o;
        }
    }

    std::uint32_t size() const { return static_cast<std::uint32_t>(size_); }
    const std::vector<std::uint32_t>& orders() const { return orders_; }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
        std::uint32_t out = 0, scale = 1;
        for (auto o : orders_) {
            out += ((x % o + y % o) % o) * scale;
            x /= o;
            y /= o;
            scale *= o;
        }
        return out;
    }

    /// Multiplication by k, as a permutation of the elements (an automorphism when gcd(k, exponent) = 1).
    std::vector<std::uint32_t> scaling(std::uint32_t k) const {
        std::vector<std::uint32_t> perm(size_);
        for (std::uint32_t x = 0; x < size_; ++x) {
            std::uint32_t acc = 0;
            for (std::uint32_t i = 0; i < k; ++i) acc = add(acc, x);
            perm[x] = acc;
        }
        return perm;
    }

  private:
    std::vector<std::uint32_t> orders_;
    std::uint64_t size_ = 1;
};

struct BarLimits {
    std::uint64_t max_generators = 10'000'000;  // largest degree touched
};

/// Normalized bar complex C_n = Z[(G - 0)^n] with trivial coefficients.
class BarComplex {
  public:
    using Perm = std::vector<std::uint32_t>;

    explicit BarComplex(FiniteAbelianGroup G) : G_(std::move(G)), base_(G_.size() - 1) {}

    const FiniteAbelianGroup& group() const { return G_; }

    std::uint64_t count(std::size_t n) const {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < n; ++i) c *= base_;
        return c;
    }

    std::vector<std::uint32_t> tuple(std::uint64_t index, std::size_t n) const {
        std::vector<std::uint32_t> t(n);
        for (std::size_t i = n; i-- > 0;) {
            t[i] = static_cast<std::uint32_t>(index % base_) + 1;
            index /= base_;
        }
        return t;
    }

    std::uint64_t index(const std::vector<std::uint32_t>& t) const {
        std::uint64_t idx = 0;
        for (auto g : t) idx = idx * base_ + (g - 1);
        return idx;
    }

    /// Faces of [g_1|...|g_n] as (sign, tuple-index in C_{n-1}); degenerate faces omitted.
    template <class F>
    void faces(const std::vector<std::uint32_t>& t, F&& emit) const {
        const std::size_t n = t.size();
        std::vector<std::uint32_t> f;
        f.reserve(n);
        for (std::size_t i = 0; i <= n; ++i) {
            f.clear();
            bool degenerate = false;
            if (i == 0) {
                f.assign(t.begin() + 1, t.end());
            } else if (i == n) {
                f.assign(t.begin(), t.end() - 1);
            } else {
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i - 1) {
                        std::uint32_t s = G_.add(t[k], t[k + 1]);
                        if (s == 0) degenerate = true;
                        f.push_back(s);
                        ++k;
                    } else {
                        f.push_back(t[k]);
                    }
                }
            }
            if (degenerate) continue;
            emit((i % 2 == 0) ? 1 : -1, index(f));
        }
    }

    /// Rows of d_n : C_n -> C_{n-1}.
    std::vector<SparseRow> boundary(std::size_t n, const BarLimits& lim) const {
        check(n, lim);
        std::vector<SparseRow> rows;
        if (n == 0) return rows;
        const std::uint64_t cnt = count(n);
        rows.reserve(cnt);
        for (std::uint64_t i = 0; i < cnt; ++i) {
            std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
            faces(tuple(i, n), [&](int s, std::uint64_t j) { terms.emplace_back(static_cast<std::uint32_t>(j), s); });
            rows.push_back(make_row(terms));
        }
        return rows;
    }

    std::vector<std::uint32_t> act(const Perm& phi, const std::vector<std::uint32_t>& t) const {
        std::vector<std::uint32_t> out(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) out[i] = phi[t[i]];
        return out;
    }

    /// Orbit id per tuple of C_n under the group generated by `actions`; ids
    /// follow the least tuple index of each orbit.
    std::vector<std::uint32_t> orbits(std::size_t n, const std::vector<Perm>& actions, std::uint32_t& orbit_count) const {
        const std::uint64_t cnt = count(n);
        std::vector<std::uint32_t> id(cnt, UINT32_MAX);
        orbit_count = 0;
        std::deque<std::uint64_t> queue;
        for (std::uint64_t i = 0; i < cnt; ++i) {
            if (id[i] != UINT32_MAX) continue;
            id[i] = orbit_count;
            queue.push_back(i);
            while (!queue.empty()) {
                auto cur = queue.front();
                queue.pop_front();
                auto t = tuple(cur, n);
                for (const auto& phi : actions) {
                    auto j = index(act(phi, t));
                    if (id[j] == UINT32_MAX) {
                        id[j] = orbit_count;
                        queue.push_back(j);
                    }
                }
            }
            ++orbit_count;
        }
        return id;
    }

    void check(std::size_t n, const BarLimits& lim) const {
        if (count(n) > lim.max_generators) throw BudgetExceeded("bar complex degree " + std::to_string(n), count(n), lim.max_generators);
    }

  private:
    FiniteAbelianGroup G_;
    std::uint32_t base_;
};

struct BarHomologyResult {
    std::vector<Integer> invariants;                    // H_n
    AbPresentation homology;                            // set by the full path only
    std::vector<std::vector<SparseRow>> actions;        // induced matrices on homology generators
    std::optional<std::vector<Integer>> coinvariants;   // H_n modulo (phi - id)
};

/// H_n(G, Z) from ranks and invariant factors only.
inline std::vector<Integer> bar_homology_invariants(const FiniteAbelianGroup& G, std::size_t n, const BarLimits& lim = {}) {
    BarComplex C(G);
    if (n == 0) return {Integer(0)};
    auto dn = C.boundary(n, lim);
    auto dn1 = C.boundary(n + 1, lim);
    const std::size_t rank_n = integer_rank(dn, C.count(n - 1));
    auto inv = invariant_factors(dn1, C.count(n));
    std::vector<Integer> out;
    for (auto& d : inv)
        if (d != 1) out.push_back(d);
    const std::size_t free = C.count(n) - rank_n - inv.size();
    for (std::size_t i = 0; i < free; ++i) out.push_back(0);
    return out;
}

/// H_n(G, Z) as a subquotient with the induced automorphism actions and coinvariants.
inline BarHomologyResult bar_homology(const FiniteAbelianGroup& G, std::size_t n, const std::vector<BarComplex::Perm>& actions = {},
                                      const BarLimits& lim = {}) {
    BarHomologyResult res;
    if (actions.empty() || n == 0) {
        res.invariants = bar_homology_invariants(G, n, lim);
        res.homology = AbPresentation::cyclic_sum(res.invariants);
        if (!actions.empty()) res.coinvariants = res.invariants;  // H_0 = Z with trivial action
        return res;
    }
    BarComplex C(G);
    const std::size_t cn = C.count(n), cm = C.count(n - 1);
    auto dn = C.boundary(n, lim);
    auto dn1 = C.boundary(n + 1, lim);
    AbMap d(AbPresentation::free(cn), AbPresentation::free(cm), std::move(dn), false);
    Lattice Z = preimage_of_zero(d);
    auto basis = Z.basis();
    std::vector<SparseRow> rels;
    for (const auto& b : dn1) {
        auto c = Z.coordinates(b);
        if (!c) throw ConstructionError("boundary outside cycle lattice");
        if (!c->empty()) rels.push_back(std::move(*c));
    }
    std::vector<SparseRow> co_rels = rels;
    for (const auto& phi : actions) {
        std::vector<SparseRow> mat;
        for (const auto& z : basis) {
            std::vector<std::pair<std::uint32_t, Integer>> terms;
            for (const auto& [col, v] : z) terms.emplace_back(static_cast<std::uint32_t>(C.index(C.act(phi, C.tuple(col, n)))), v);
            auto img = Z.coordinates(make_row(std::move(terms)));
            if (!img) throw ConstructionError("automorphism does not preserve cycles");
            mat.push_back(*img);
        }
        for (std::size_t i = 0; i < basis.size(); ++i) {
            SparseRow diff = axpy(mat[i], Integer(-1), SparseRow{{static_cast<std::uint32_t>(i), Integer(1)}});
            if (!diff.empty()) co_rels.push_back(std::move(diff));
        }
        res.actions.push_back(std::move(mat));
    }
    res.homology = AbPresentation(basis.size(), std::move(rels));
    res.invariants = res.homology.invariants();
    res.coinvariants = AbPresentation(basis.size(), std::move(co_rels)).invariants();
    return res;
}

/// Coinvariants of H_n(G) under a group T of automorphisms with gcd(|G|, |T|) = 1
/// and n >= 1: the |G|-primary part of the homology of the orbit complex C_T.
inline std::vector<Integer> bar_coinvariants_coprime(const FiniteAbelianGroup& G, std::size_t n, const std::vector<BarComplex::Perm>& actions,
                                                     const BarLimits& lim = {}) {
    if (n == 0) throw InvalidInput("coprime route needs n >= 1");
    BarComplex C(G);
    C.check(n + 1, lim);
    std::uint32_t o_prev = 0, o_n = 0, o_next = 0;
    auto id_prev = C.orbits(n - 1, actions, o_prev);
    auto id_n = C.orbits(n, actions, o_n);
    auto id_next = C.orbits(n + 1, actions, o_next);
    auto orbit_boundary = [&](std::size_t deg, const std::vector<std::uint32_t>& id_src, std::uint32_t count_src,
                              const std::vector<std::uint32_t>& id_tgt) {
        std::vector<SparseRow> rows(count_src);
        std::vector<char> done(count_src, 0);
        const std::uint64_t cnt = C.count(deg);
        for (std::uint64_t i = 0; i < cnt; ++i) {
            std::uint32_t o = id_src[i];
            if (done[o]) continue;
            done[o] = 1;
            std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
            C.faces(C.tuple(i, deg), [&](int s, std::uint64_t j) { terms.emplace_back(id_tgt[j], s); });
            rows[o] = make_row(terms);
        }
        return rows;
    };
    auto dn = orbit_boundary(n, id_n, o_n, id_prev);
    auto dn1 = orbit_boundary(n + 1, id_next, o_next, id_n);
    const std::size_t rank_n = integer_rank(dn, o_prev);
    auto inv = invariant_factors(dn1, o_n);
    std::vector<Integer> tors;
    for (auto& d : inv)
        if (d != 1) tors.push_back(d);
    if (o_n != rank_n + inv.size()) throw ConstructionError("orbit complex has free homology in positive degree");
    std::uint64_t order = G.size();
    return primary_part(tors, prime_factors(order));
}

}  // namespace rbw
