#pragma once

// Finitely generated abelian groups given by generators and relations, maps
// between them, and the constructions built on top: kernels, images,
// cokernels, tensor / symmetric / exterior squares, Tor_1 and its involution.

#include "rbw/errors.hpp"
#include "rbw/lattice.hpp"
#include "rbw/smith.hpp"

#include <memory>
#include <mutex>
#include <string>

namespace rbw {

/// Z^n / rowspace(R).
class AbPresentation {
  public:
    AbPresentation() : AbPresentation(0, {}) {}
    AbPresentation(std::size_t generators, std::vector<SparseRow> relations)
        : impl_(std::make_shared<Impl>()) {
        impl_->n = generators;
        impl_->rels = std::move(relations);
        for (const auto& r : impl_->rels)
            if (!r.empty() && r.back().first >= generators) throw InvalidInput("relation refers to a missing generator");
    }

    /// Direct sum of cyclic groups Z/d_i (d_i = 0 gives Z).
    static AbPresentation cyclic_sum(const std::vector<Integer>& orders) {
        std::vector<SparseRow> rels;
        for (std::size_t i = 0; i < orders.size(); ++i)
            if (orders[i] != 0) rels.push_back({{static_cast<std::uint32_t>(i), orders[i]}});
        return AbPresentation(orders.size(), std::move(rels));
    }
    static AbPresentation free(std::size_t n) { return AbPresentation(n, {}); }

    std::size_t generators() const { return impl_->n; }
    const std::vector<SparseRow>& relations() const { return impl_->rels; }

    /// Invariant factors other than 1, torsion ascending, then one 0 per free summand.
    const std::vector<Integer>& invariants() const {
        std::call_once(impl_->inv_once, [this] {
            auto diag = invariant_factors(impl_->rels, impl_->n, SnfPath::sparse);
            std::vector<Integer> out;
            for (auto& d : diag)
                if (d != 1) out.push_back(d);
            for (std::size_t i = diag.size(); i < impl_->n; ++i) out.push_back(0);
            impl_->inv = std::move(out);
        });
        return impl_->inv;
    }

    /// Same invariants via the lattice-echelon route (independent code path).
    std::vector<Integer> invariants_via(SnfPath path) const {
        auto diag = invariant_factors(impl_->rels, impl_->n, path);
        std::vector<Integer> out;
        for (auto& d : diag)
            if (d != 1) out.push_back(d);
        for (std::size_t i = diag.size(); i < impl_->n; ++i) out.push_back(0);
        return out;
    }

    std::size_t free_rank() const {
        std::size_t r = 0;
        for (const auto& d : invariants()) r += (d == 0);
        return r;
    }
    bool is_finite() const { return free_rank() == 0; }
    bool is_trivial() const { return invariants().empty(); }

    /// Order of the torsion subgroup.
    Integer torsion_order() const {
        Integer o = 1;
        for (const auto& d : invariants())
            if (d != 0) o *= d;
        return o;
    }
    /// Order, or 0 when infinite.
    Integer order() const { return is_finite() ? torsion_order() : Integer(0); }

    /// "0", "Z/2 + Z/4", "Z^2 + Z/3"
    std::string describe() const { return describe_invariants(invariants()); }

    static std::string describe_invariants(const std::vector<Integer>& inv) {
        std::string out;
        std::size_t free = 0;
        for (const auto& d : inv) {
            if (d == 0) {
                ++free;
                continue;
            }
            if (!out.empty()) out += " + ";
            out += "Z/" + d.get_str();
        }
        if (free > 0) {
            std::string z = free == 1 ? "Z" : "Z^" + std::to_string(free);
            out = out.empty() ? z : z + " + " + out;
        }
        return out.empty() ? "0" : out;
    }

    /// Echelon lattice of the relation rows.
    const Lattice& relation_lattice() const {
        std::call_once(impl_->lat_once, [this] {
            impl_->lat = std::make_unique<Lattice>(impl_->n);
            impl_->lat->insert_all(impl_->rels);
        });
        return *impl_->lat;
    }

    /// x is zero in the group.
    bool is_zero(const SparseRow& x) const { return relation_lattice().contains(x); }

  private:
    struct Impl {
        std::size_t n = 0;
        std::vector<SparseRow> rels;
        std::once_flag inv_once, lat_once;
        std::vector<Integer> inv;
        std::unique_ptr<Lattice> lat;
    };
    std::shared_ptr<Impl> impl_;
};

/// Homomorphism given on generators: row i is the image of generator i.
class AbMap {
  public:
    AbMap() = default;
    AbMap(AbPresentation source, AbPresentation target, std::vector<SparseRow> matrix, bool check = true)
        : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
        if (mat_.size() != src_.generators()) throw InvalidInput("map matrix has wrong row count");
        for (const auto& r : mat_)
            if (!r.empty() && r.back().first >= tgt_.generators()) throw InvalidInput("map image outside target");
        if (check) {
            for (std::size_t i = 0; i < src_.relations().size(); ++i)
                if (!tgt_.is_zero(apply(src_.relations()[i])))
                    throw ConstructionError("map does not respect source relation " + std::to_string(i));
        }
    }

    const AbPresentation& source() const { return src_; }
    const AbPresentation& target() const { return tgt_; }
    const std::vector<SparseRow>& matrix() const { return mat_; }

    SparseRow apply(const SparseRow& x) const { return row_times(x, mat_); }

    /// after . this
    AbMap then(const AbMap& after) const {
        std::vector<SparseRow> m;
        m.reserve(mat_.size());
        for (const auto& r : mat_) m.push_back(after.apply(r));
        return AbMap(src_, after.tgt_, std::move(m), false);
    }

    bool is_zero() const {
        for (const auto& r : mat_)
            if (!tgt_.is_zero(r)) return false;
        return true;
    }

    /// Indices of source relations whose image is nonzero (a well-defined map has none).
    std::vector<std::size_t> violated_relations() const {
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i < src_.relations().size(); ++i)
            if (!tgt_.is_zero(apply(src_.relations()[i]))) bad.push_back(i);
        return bad;
    }

  private:
    AbPresentation src_, tgt_;
    std::vector<SparseRow> mat_;
};

struct Subquotient {
    AbPresentation group;
    AbMap map;  // kernel: inclusion into source; image: inclusion into target; cokernel: projection from target
    std::vector<SparseRow> basis;  // kernel only: generators as source vectors
};

/// {x in Z^n : f(x) = 0 in the target}, as a lattice in source coordinates.
inline Lattice preimage_of_zero(const AbMap& f) {
    const std::size_t n = f.source().generators(), m = f.target().generators();
    Lattice aug(m + n);
    for (const auto& s : f.target().relation_lattice().basis()) aug.insert(s);
    for (std::size_t i = 0; i < n; ++i) {
        SparseRow r = f.matrix()[i];
        r.emplace_back(static_cast<std::uint32_t>(m + i), Integer(1));
        aug.insert(std::move(r));
    }
    return aug.tail_from(static_cast<std::uint32_t>(m), n);
}

inline Subquotient kernel(const AbMap& f) {
    Lattice K = preimage_of_zero(f);
    auto basis = K.basis();
    std::vector<SparseRow> rels;
    rels.reserve(f.source().relations().size());
    for (const auto& r : f.source().relations()) {
        auto c = K.coordinates(r);
        if (!c) throw ConstructionError("source relation outside the kernel lattice");
        if (!c->empty()) rels.push_back(std::move(*c));
    }
    AbPresentation group(basis.size(), std::move(rels));
    AbMap inc(group, f.source(), basis, false);
    return {group, inc, basis};
}

inline Subquotient image(const AbMap& f) {
    Lattice K = preimage_of_zero(f);
    AbPresentation group(f.source().generators(), K.basis());
    AbMap inc(group, f.target(), f.matrix(), false);
    return {group, inc, {}};
}

inline Subquotient cokernel(const AbMap& f) {
    std::vector<SparseRow> rels = f.target().relations();
    for (const auto& r : f.matrix())
        if (!r.empty()) rels.push_back(r);
    AbPresentation group(f.target().generators(), std::move(rels));
    std::vector<SparseRow> id;
    for (std::size_t i = 0; i < f.target().generators(); ++i) id.push_back({{static_cast<std::uint32_t>(i), Integer(1)}});
    AbMap proj(f.target(), group, std::move(id), false);
    return {group, proj, {}};
}

inline bool is_isomorphism(const AbMap& f) { return kernel(f).group.is_trivial() && cokernel(f).group.is_trivial(); }

/// Restriction of f to a subgroup given by its inclusion map.
inline AbMap restrict_to(const AbMap& f, const AbMap& inclusion) { return inclusion.then(f); }

enum class MultilinearOp { tensor_self, wedge2, wedge3, sym2Z };

struct MultilinearResult {
    AbPresentation group;
    AbPresentation ambient;  // B (x) B, or B (x) B (x) B for wedge3
    AbMap quotient;          // ambient -> group, identity on generators
    std::size_t base_rank = 0;

    std::uint32_t index(std::size_t i, std::size_t j) const { return static_cast<std::uint32_t>(i * base_rank + j); }
    std::uint32_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return static_cast<std::uint32_t>((i * base_rank + j) * base_rank + k);
    }
};

namespace detail {

// r placed in tensor slot `slot` with fixed basis vectors in the others.
inline void tensor_relations(const std::vector<SparseRow>& rels, std::size_t n, std::size_t arity, std::vector<SparseRow>& out) {
    std::size_t others = 1;
    for (std::size_t a = 1; a < arity; ++a) others *= n;
    for (std::size_t slot = 0; slot < arity; ++slot)
        for (const auto& r : rels)
            for (std::size_t fixed = 0; fixed < others; ++fixed) {
                std::vector<std::pair<std::uint32_t, Integer>> terms;
                for (const auto& [c, v] : r) {
                    // Build multi-index with c in `slot`, digits of `fixed` elsewhere.
                    std::size_t f = fixed, idx = 0;
                    std::vector<std::size_t> digits(arity);
                    for (std::size_t a = arity; a-- > 0;) {
                        if (a == slot) continue;
                        digits[a] = f % n;
                        f /= n;
                    }
                    digits[slot] = c;
                    for (std::size_t a = 0; a < arity; ++a) idx = idx * n + digits[a];
                    terms.emplace_back(static_cast<std::uint32_t>(idx), v);
                }
                out.push_back(make_row(std::move(terms)));
            }
}

}  // namespace detail

inline MultilinearResult multilinear(const AbPresentation& B, MultilinearOp op) {
    const std::size_t n = B.generators();
    const std::size_t arity = op == MultilinearOp::wedge3 ? 3 : 2;
    std::vector<SparseRow> base;
    detail::tensor_relations(B.relations(), n, arity, base);
    std::size_t total = 1;
    for (std::size_t a = 0; a < arity; ++a) total *= n;
    AbPresentation ambient(total, base);
    std::vector<SparseRow> rels = base;
    auto idx2 = [n](std::size_t i, std::size_t j) { return static_cast<std::uint32_t>(i * n + j); };
    auto idx3 = [n](std::size_t i, std::size_t j, std::size_t k) { return static_cast<std::uint32_t>((i * n + j) * n + k); };
    switch (op) {
        case MultilinearOp::tensor_self: break;
        case MultilinearOp::sym2Z:
            // x (x) y + y (x) x, including x = y.
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) rels.push_back(make_row({{idx2(i, j), Integer(1)}, {idx2(j, i), Integer(1)}}));
            break;
        case MultilinearOp::wedge2:
            for (std::size_t i = 0; i < n; ++i) {
                rels.push_back({{idx2(i, i), Integer(1)}});
                for (std::size_t j = i + 1; j < n; ++j) rels.push_back(make_row({{idx2(i, j), Integer(1)}, {idx2(j, i), Integer(1)}}));
            }
            break;
        case MultilinearOp::wedge3:
            // x (x) x (x) y and y (x) x (x) x, linearized.
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i) {
                    rels.push_back({{idx3(i, i, k), Integer(1)}});
                    rels.push_back({{idx3(k, i, i), Integer(1)}});
                    for (std::size_t j = i + 1; j < n; ++j) {
                        rels.push_back(make_row({{idx3(i, j, k), Integer(1)}, {idx3(j, i, k), Integer(1)}}));
                        rels.push_back(make_row({{idx3(k, i, j), Integer(1)}, {idx3(k, j, i), Integer(1)}}));
                    }
                }
            break;
    }
    AbPresentation group(total, std::move(rels));
    std::vector<SparseRow> id;
    for (std::size_t i = 0; i < total; ++i) id.push_back({{static_cast<std::uint32_t>(i), Integer(1)}});
    AbMap q(ambient, group, std::move(id), false);
    return {group, ambient, q, n};
}

/// Tor_1(B, B) on the cyclic decomposition of B.
struct TorData {
    std::vector<Integer> factors;      // finite cyclic factors of B used (non-1, nonzero)
    AbPresentation tor;                // generators t_ij = i * r + j, order gcd(d_i, d_j)
    std::vector<SparseRow> sigma1;     // t_ij -> -t_ji
    std::vector<SparseRow> sigma_prime;  // x -> -sigma1(x)
    Subquotient fixed;                 // Sigma_2' fixed points

    std::size_t rank() const { return factors.size(); }
};

inline TorData tor1(const AbPresentation& B) {
    TorData t;
    for (const auto& d : B.invariants())
        if (d != 0) t.factors.push_back(d);
    const std::size_t r = t.factors.size();
    std::vector<Integer> orders;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) orders.push_back(gcd(t.factors[i], t.factors[j]));
    t.tor = AbPresentation::cyclic_sum(orders);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            auto ji = static_cast<std::uint32_t>(j * r + i);
            t.sigma1.push_back({{ji, Integer(-1)}});
            t.sigma_prime.push_back({{ji, Integer(1)}});
        }
    std::vector<SparseRow> diff;
    for (std::size_t g = 0; g < r * r; ++g)
        diff.push_back(make_row({{t.sigma_prime[g].front().first, Integer(1)}, {static_cast<std::uint32_t>(g), Integer(-1)}}));
    t.fixed = kernel(AbMap(t.tor, t.tor, std::move(diff)));
    return t;
}

/// Order of a finite group given by invariants (0 if any free summand).
inline Integer order_of(const std::vector<Integer>& inv) {
    Integer o = 1;
    for (const auto& d : inv) {
        if (d == 0) return 0;
        o *= d;
    }
    return o;
}

/// Keeps only the parts of each invariant factor at the given primes.
inline std::vector<Integer> primary_part(const std::vector<Integer>& inv, const std::vector<std::uint64_t>& primes) {
    std::vector<Integer> out;
    for (const auto& d : inv) {
        if (d == 0) continue;
        Integer part = 1, rest = d;
        for (auto p : primes) {
            Integer P(static_cast<unsigned long>(p));
            while (divides(P, rest)) {
                rest /= P;
                part *= P;
            }
        }
        if (part != 1) out.push_back(part);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rbw
