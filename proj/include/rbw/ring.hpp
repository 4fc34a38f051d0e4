#pragma once

// Finite commutative rings small enough to enumerate: Z/m, GF(p^k) given by an
// irreducible modulus, and truncated polynomial rings GF(p^k)[t]/(t^n).
//
// Elements are encoded as integers in [0, size). For GF(p^k) the encoding is
// the little-endian coefficient vector of the polynomial representative read
// in base p (c0 + c1*p + ... ). For GF(q)[t]/(t^n) it is the coefficient
// vector in t read in base q, each coefficient being a GF(q) encoding. Z/m
// uses the least nonnegative residue. In all three 0 encodes zero and 1
// encodes one, and ascending encoding is the canonical order everywhere.

#include "rbw/errors.hpp"
#include "rbw/integer.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace rbw {

using Elem = std::uint32_t;

enum class RingKind { prime_field, galois_field, residue_ring, truncated_poly };

/// Polynomials over F_p, coefficients low to high, no trailing zeros.
namespace fp_poly {

using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    // m is monic
    while (a.size() >= m.size()) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            std::uint64_t sub = (lead * m[i]) % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return deg == 1;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

inline std::string to_string(const Poly& f, char var = 'x') {
    std::string out;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(f[i]);
            continue;
        }
        if (f[i] != 1) out += std::to_string(f[i]);
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace fp_poly

/// Shipped modulus table for GF(2^k), k <= 8. Fixed; changing an entry
/// changes every element encoding for that field.
inline fp_poly::Poly default_binary_modulus(std::uint32_t k) {
    switch (k) {
        case 1: return {0, 1};                          // x
        case 2: return {1, 1, 1};                       // x^2+x+1
        case 3: return {1, 1, 0, 1};                    // x^3+x+1
        case 4: return {1, 1, 0, 0, 1};                 // x^4+x+1
        case 5: return {1, 0, 1, 0, 0, 1};              // x^5+x^2+1
        case 6: return {1, 1, 0, 0, 0, 0, 1};           // x^6+x+1
        case 7: return {1, 1, 0, 0, 0, 0, 0, 1};        // x^7+x+1
        case 8: return {1, 1, 0, 1, 1, 0, 0, 0, 1};     // x^8+x^4+x^3+x+1
        default: return {};
    }
}

/// First monic irreducible of degree k over F_p in lexicographic order of
/// (c0, c1, ..., c_{k-1}) read as a base-p number. Used when no table entry.
inline fp_poly::Poly first_irreducible(std::uint32_t p, std::uint32_t k) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        fp_poly::Poly f(k + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < k; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[k] = 1;
        if (fp_poly::is_irreducible(f, p)) return f;
    }
    throw InvalidInput("no irreducible polynomial found");
}

inline fp_poly::Poly default_modulus(std::uint32_t p, std::uint32_t k) {
    if (p == 2 && k <= 8) return default_binary_modulus(k);
    if (k == 1) return {0, 1};
    return first_irreducible(p, k);
}

struct RingSpec {
    RingKind kind = RingKind::residue_ring;
    std::uint32_t p = 0;        // characteristic of the (base) field
    std::uint32_t k = 1;        // extension degree of the (base) field
    std::uint32_t m = 0;        // modulus for Z/m
    std::uint32_t trunc = 1;    // n for GF(p^k)[t]/(t^n)
    fp_poly::Poly modulus;      // monic, degree k

    /// Canonical string form. Omits the modulus when it is the default one.
    std::string canonical() const {
        if (kind == RingKind::residue_ring) return "z/" + std::to_string(m);
        std::string field = "gf(" + std::to_string(p) + "," + std::to_string(k);
        if (modulus != default_modulus(p, k)) field += ";" + fp_poly::to_string(modulus);
        field += ")";
        if (kind == RingKind::truncated_poly) field += "[t]/t^" + std::to_string(trunc);
        return field;
    }

    static RingSpec parse(std::string_view text);
};

namespace detail {

class SpecParser {
  public:
    explicit SpecParser(std::string_view text) {
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                s_ += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }

    RingSpec parse() {
        RingSpec spec;
        if (accept("z/")) {
            spec.kind = RingKind::residue_ring;
            spec.m = number();
            if (spec.m < 2) fail("z/m needs m >= 2");
            spec.p = spec.m;
            expect_end();
            return spec;
        }
        if (!accept("gf(")) fail("expected 'gf(' or 'z/'");
        spec.p = number();
        if (!is_prime(spec.p)) fail("characteristic must be prime");
        spec.k = 1;
        if (accept(",")) spec.k = number();
        if (spec.k < 1) fail("degree must be positive");
        bool explicit_modulus = false;
        if (accept(";")) {
            spec.modulus = polynomial(spec.p, 'x');
            explicit_modulus = true;
        }
        if (!accept(")")) fail("expected ')'");
        if (!explicit_modulus) spec.modulus = default_modulus(spec.p, spec.k);
        if (spec.modulus.size() != spec.k + 1 || spec.modulus.back() != 1)
            fail("modulus must be monic of degree k");
        spec.kind = spec.k == 1 ? RingKind::prime_field : RingKind::galois_field;
        if (accept("[t]/")) {
            bool paren = accept("(");
            if (!accept("t^")) {
                if (!accept("t")) fail("expected t^n");
                spec.trunc = 1;
            } else {
                spec.trunc = number();
            }
            if (paren && !accept(")")) fail("expected ')'");
            if (spec.trunc < 1) fail("truncation degree must be positive");
            spec.kind = RingKind::truncated_poly;
        }
        expect_end();
        return spec;
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw InvalidInput("bad ring spec '" + s_ + "': " + why);
    }
    bool accept(std::string_view tok) {
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    bool peek_digit() const {
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    std::uint32_t number() {
        if (!peek_digit()) fail("expected a number");
        std::uint64_t v = 0;
        while (peek_digit()) {
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
            if (v > (1u << 30)) fail("number too large");
        }
        return static_cast<std::uint32_t>(v);
    }
    fp_poly::Poly polynomial(std::uint32_t p, char var) {
        std::map<std::uint32_t, std::int64_t> terms;
        int sign = 1;
        bool first = true;
        while (pos_ < s_.size() && s_[pos_] != ')') {
            if (accept("+")) sign = 1;
            else if (accept("-")) sign = -1;
            else if (!first) fail("expected + or -");
            first = false;
            std::int64_t coef = 1;
            bool have_coef = false;
            if (peek_digit()) {
                coef = number();
                have_coef = true;
                accept("*");
            }
            std::uint32_t exp = 0;
            if (pos_ < s_.size() && s_[pos_] == var) {
                ++pos_;
                exp = 1;
                if (accept("^")) exp = number();
            } else if (!have_coef) {
                fail("bad polynomial term");
            }
            terms[exp] += sign * coef;
        }
        std::uint32_t deg = terms.empty() ? 0 : terms.rbegin()->first;
        fp_poly::Poly f(deg + 1, 0);
        for (auto [e, c] : terms) {
            std::int64_t r = c % static_cast<std::int64_t>(p);
            if (r < 0) r += p;
            f[e] = static_cast<std::uint32_t>(r);
        }
        fp_poly::trim(f);
        return f;
    }
    void expect_end() const {
        if (pos_ != s_.size()) fail("trailing characters");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RingSpec RingSpec::parse(std::string_view text) { return detail::SpecParser(text).parse(); }

struct RingLimits {
    std::uint32_t max_size = 1u << 14;
};

/// Enumerated unit-group data. Every list is in ascending encoding order.
struct UnitData {
    std::vector<Elem> units;
    std::vector<Elem> wset;            // a with a and 1-a units
    std::vector<Elem> squares;
    std::vector<Elem> class_reps;      // least element of each square class
    std::vector<int> class_of;         // indexed by encoding, -1 off A^x
    std::vector<std::vector<int>> class_mul;
    std::vector<Elem> mu2;
    std::vector<Elem> mu;              // all of A^x for a finite ring
    std::vector<std::int64_t> sqrt_of; // least square root, -1 if none
    std::vector<int> unit_index;       // encoding -> position in units, -1 off A^x
    std::vector<int> w_index;          // encoding -> position in wset, -1 off W_A
    std::optional<Elem> generator;     // least generator when A^x is cyclic
    std::vector<std::int64_t> dlog;    // discrete log base generator, -1 off A^x

    std::size_t class_count() const { return class_reps.size(); }
    bool cyclic() const { return generator.has_value(); }
};

class Ring {
  public:
    static std::shared_ptr<const Ring> build(const RingSpec& spec, RingLimits limits = {}) {
        return std::shared_ptr<const Ring>(new Ring(spec, limits));
    }
    static std::shared_ptr<const Ring> build(std::string_view text, RingLimits limits = {}) {
        return build(RingSpec::parse(text), limits);
    }

    const RingSpec& spec() const { return spec_; }
    std::string name() const { return spec_.canonical(); }
    std::uint32_t size() const { return size_; }
    std::uint32_t characteristic() const { return spec_.kind == RingKind::residue_ring ? spec_.m : spec_.p; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    bool is_field() const {
        switch (spec_.kind) {
            case RingKind::prime_field:
            case RingKind::galois_field: return true;
            case RingKind::residue_ring: return is_prime(spec_.m);
            case RingKind::truncated_poly: return spec_.trunc == 1;
        }
        return false;
    }
    bool is_local() const {
        if (spec_.kind == RingKind::residue_ring) return prime_factors(spec_.m).size() == 1;
        return true;
    }
    /// Size of A/m for a local ring.
    std::uint32_t residue_field_size() const {
        if (!is_local()) throw InvalidInput(name() + " is not local");
        if (spec_.kind == RingKind::residue_ring)
            return static_cast<std::uint32_t>(prime_factors(spec_.m).front());
        return base_size_;
    }
    std::uint64_t unit_count() const { return unit_count_; }

    Elem add(Elem x, Elem y) const {
        switch (spec_.kind) {
            case RingKind::residue_ring: return (x + y) % spec_.m;
            case RingKind::prime_field:
            case RingKind::galois_field:
                if (spec_.p == 2) return x ^ y;
                return digitwise(x, y, spec_.p, size_, [&](Elem a, Elem b) { return (a + b) % spec_.p; });
            case RingKind::truncated_poly:
                return digitwise(x, y, base_size_, size_, [&](Elem a, Elem b) { return base_->add(a, b); });
        }
        return 0;
    }
    Elem neg(Elem x) const {
        switch (spec_.kind) {
            case RingKind::residue_ring: return (spec_.m - x) % spec_.m;
            case RingKind::prime_field:
            case RingKind::galois_field:
                if (spec_.p == 2) return x;
                return digitwise(x, 0, spec_.p, size_, [&](Elem a, Elem) { return (spec_.p - a) % spec_.p; });
            case RingKind::truncated_poly:
                return digitwise(x, 0, base_size_, size_, [&](Elem a, Elem) { return base_->neg(a); });
        }
        return 0;
    }
    Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }

    Elem mul(Elem x, Elem y) const {
        if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(x) * size_ + y];
        if (!log_.empty()) {
            if (x == 0 || y == 0) return 0;
            return exp_[(log_[x] + log_[y]) % (size_ - 1)];
        }
        return mul_slow(x, y);
    }

    bool is_unit(Elem x) const {
        switch (spec_.kind) {
            case RingKind::residue_ring: return gcd64(x, spec_.m) == 1;
            case RingKind::prime_field:
            case RingKind::galois_field: return x != 0;
            case RingKind::truncated_poly: return (x % base_size_) != 0;
        }
        return false;
    }

    Elem inv(Elem x) const {
        if (!is_unit(x)) throw InvalidInput("element " + std::to_string(x) + " is not a unit in " + name());
        return inverse_[x];
    }

    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }

    Elem pow(Elem x, std::uint64_t e) const {
        Elem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    /// Integer n as a ring element.
    Elem from_int(std::int64_t n) const {
        Elem acc = zero();
        Elem base = n >= 0 ? one() : neg(one());
        std::uint64_t k = static_cast<std::uint64_t>(n >= 0 ? n : -n) % characteristic();
        for (std::uint64_t i = 0; i < k; ++i) acc = add(acc, base);
        return acc;
    }

    /// Human-readable element, e.g. "1+t^2" or "x^2+1" or "7".
    std::string format(Elem x) const {
        switch (spec_.kind) {
            case RingKind::residue_ring:
            case RingKind::prime_field: return std::to_string(x);
            case RingKind::galois_field: return fp_poly::to_string(digits(x, spec_.p, spec_.k), 'x');
            case RingKind::truncated_poly: {
                auto cs = digits(x, base_size_, spec_.trunc);
                std::string out;
                for (std::size_t i = 0; i < cs.size(); ++i) {
                    if (cs[i] == 0) continue;
                    if (!out.empty()) out += "+";
                    std::string c = base_->format(cs[i]);
                    bool simple = c.find('+') == std::string::npos;
                    if (i == 0) out += c;
                    else {
                        if (c != "1") out += simple ? c : "(" + c + ")";
                        out += "t";
                        if (i > 1) out += "^" + std::to_string(i);
                    }
                }
                return out.empty() ? "0" : out;
            }
        }
        return {};
    }

    /// Unit data, computed once per ring and cached.
    const UnitData& units() const {
        std::call_once(units_once_, [this] {
            if (!units_) units_ = std::make_unique<UnitData>(compute_units());
        });
        return *units_;
    }

    /// Installs externally loaded unit data (a cache hit). Must be called
    /// before the first units() call; the data is checked for consistency.
    void install_units(UnitData data) const {
        if (data.units.size() != unit_count_) throw InvalidInput("cached unit table does not match ring");
        for (Elem u : data.units)
            if (!is_unit(u)) throw InvalidInput("cached unit table contains a non-unit");
        std::call_once(units_once_, [&] { units_ = std::make_unique<UnitData>(std::move(data)); });
    }

  private:
    Ring(const RingSpec& spec, RingLimits limits) : spec_(spec) {
        std::uint64_t size = 0;
        switch (spec_.kind) {
            case RingKind::residue_ring: size = spec_.m; break;
            case RingKind::prime_field:
            case RingKind::galois_field:
            case RingKind::truncated_poly: {
                if (!is_prime(spec_.p)) throw InvalidInput("characteristic must be prime");
                if (spec_.modulus.size() != spec_.k + 1 || spec_.modulus.back() != 1)
                    throw InvalidInput("modulus must be monic of degree k");
                std::uint64_t q = 1;
                for (std::uint32_t i = 0; i < spec_.k; ++i) {
                    q *= spec_.p;
                    if (q > limits.max_size) throw BudgetExceeded("ring size", q, limits.max_size);
                }
                base_size_ = static_cast<std::uint32_t>(q);
                size = q;
                if (spec_.kind == RingKind::truncated_poly) {
                    size = 1;
                    for (std::uint32_t i = 0; i < spec_.trunc; ++i) {
                        size *= q;
                        if (size > limits.max_size) throw BudgetExceeded("ring size", size, limits.max_size);
                    }
                }
                break;
            }
        }
        if (size > limits.max_size) throw BudgetExceeded("ring size", size, limits.max_size);
        size_ = static_cast<std::uint32_t>(size);

        if (spec_.kind == RingKind::residue_ring) {
            base_size_ = spec_.m;
        } else {
            if (!fp_poly::is_irreducible(spec_.modulus, spec_.p))
                throw InvalidInput("modulus " + fp_poly::to_string(spec_.modulus) + " is reducible over F_" +
                                   std::to_string(spec_.p));
        }
        if (spec_.kind == RingKind::truncated_poly) {
            RingSpec base = spec_;
            base.kind = spec_.k == 1 ? RingKind::prime_field : RingKind::galois_field;
            base.trunc = 1;
            base_ = build(base, limits);
        }

        // Units count.
        switch (spec_.kind) {
            case RingKind::residue_ring: {
                std::uint64_t phi = spec_.m;
                for (auto pr : prime_factors(spec_.m)) phi = phi / pr * (pr - 1);
                unit_count_ = phi;
                break;
            }
            case RingKind::prime_field:
            case RingKind::galois_field: unit_count_ = size_ - 1; break;
            case RingKind::truncated_poly: unit_count_ = static_cast<std::uint64_t>(size_ / base_size_) * (base_size_ - 1); break;
        }

        bool field_kind = spec_.kind == RingKind::prime_field || spec_.kind == RingKind::galois_field;
        if (size_ <= 256) {
            mul_table_.resize(static_cast<std::size_t>(size_) * size_);
            for (Elem x = 0; x < size_; ++x)
                for (Elem y = 0; y < size_; ++y) mul_table_[static_cast<std::size_t>(x) * size_ + y] = mul_slow(x, y);
        } else if (field_kind) {
            build_log_tables();
        }
        inverse_.assign(size_, 0);
        for (Elem x = 0; x < size_; ++x)
            if (is_unit(x)) inverse_[x] = pow(x, unit_count_ - 1);
    }

    static std::vector<Elem> digits(Elem x, std::uint32_t base, std::uint32_t count) {
        std::vector<Elem> d(count, 0);
        for (std::uint32_t i = 0; i < count; ++i) {
            d[i] = x % base;
            x /= base;
        }
        return d;
    }
    static Elem undigits(const std::vector<Elem>& d, std::uint32_t base) {
        Elem x = 0;
        for (std::size_t i = d.size(); i-- > 0;) x = x * base + d[i];
        return x;
    }

    template <class Op>
    static Elem digitwise(Elem x, Elem y, std::uint32_t base, std::uint32_t size, Op op) {
        Elem out = 0, scale = 1;
        while (scale < size) {
            out += op(x % base, y % base) * scale;
            x /= base;
            y /= base;
            scale *= base;
        }
        return out;
    }

    Elem mul_slow(Elem x, Elem y) const {
        switch (spec_.kind) {
            case RingKind::residue_ring:
                return static_cast<Elem>((static_cast<std::uint64_t>(x) * y) % spec_.m);
            case RingKind::prime_field:
                return static_cast<Elem>((static_cast<std::uint64_t>(x) * y) % spec_.p);
            case RingKind::galois_field: {
                const std::uint32_t p = spec_.p, k = spec_.k;
                auto a = digits(x, p, k), b = digits(y, p, k);
                fp_poly::Poly prod(2 * k, 0);
                for (std::uint32_t i = 0; i < k; ++i)
                    for (std::uint32_t j = 0; j < k; ++j)
                        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
                auto r = fp_poly::mod(prod, spec_.modulus, p);
                r.resize(k, 0);
                return undigits(r, p);
            }
            case RingKind::truncated_poly: {
                const std::uint32_t n = spec_.trunc;
                auto a = digits(x, base_size_, n), b = digits(y, base_size_, n);
                std::vector<Elem> c(n, 0);
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (a[i] == 0) continue;
                    for (std::uint32_t j = 0; i + j < n; ++j) c[i + j] = base_->add(c[i + j], base_->mul(a[i], b[j]));
                }
                return undigits(c, base_size_);
            }
        }
        return 0;
    }

    void build_log_tables() {
        const std::uint64_t order = size_ - 1;
        auto primes = prime_factors(order);
        auto slow_pow = [&](Elem x, std::uint64_t e) {
            Elem r = 1;
            while (e > 0) {
                if (e & 1) r = mul_slow(r, x);
                x = mul_slow(x, x);
                e >>= 1;
            }
            return r;
        };
        Elem gen = 0;
        for (Elem g = 2; g < size_; ++g) {
            bool primitive = true;
            for (auto pr : primes)
                if (slow_pow(g, order / pr) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                gen = g;
                break;
            }
        }
        if (size_ == 2) gen = 1;
        exp_.assign(order, 0);
        log_.assign(size_, 0);
        Elem cur = 1;
        for (std::uint64_t i = 0; i < order; ++i) {
            exp_[i] = cur;
            log_[cur] = static_cast<std::uint32_t>(i);
            cur = mul_slow(cur, gen);
        }
    }

    UnitData compute_units() const {
        UnitData u;
        u.unit_index.assign(size_, -1);
        u.w_index.assign(size_, -1);
        u.class_of.assign(size_, -1);
        u.sqrt_of.assign(size_, -1);
        u.dlog.assign(size_, -1);
        for (Elem x = 0; x < size_; ++x) {
            if (!is_unit(x)) continue;
            u.unit_index[x] = static_cast<int>(u.units.size());
            u.units.push_back(x);
        }
        for (Elem a : u.units)
            if (is_unit(sub(one(), a))) {
                u.w_index[a] = static_cast<int>(u.wset.size());
                u.wset.push_back(a);
            }
        for (Elem x : u.units) {
            Elem s = mul(x, x);
            if (u.sqrt_of[s] < 0) u.sqrt_of[s] = x;
        }
        for (Elem x : u.units)
            if (u.sqrt_of[x] >= 0) u.squares.push_back(x);
        for (Elem x : u.units) {
            if (u.class_of[x] >= 0) continue;
            int c = static_cast<int>(u.class_reps.size());
            u.class_reps.push_back(x);
            for (Elem s : u.squares) u.class_of[mul(x, s)] = c;
        }
        const std::size_t nc = u.class_reps.size();
        u.class_mul.assign(nc, std::vector<int>(nc, 0));
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nc; ++j) u.class_mul[i][j] = u.class_of[mul(u.class_reps[i], u.class_reps[j])];
        for (Elem b : u.units)
            if (mul(b, b) == one()) u.mu2.push_back(b);
        u.mu = u.units;

        const std::uint64_t order = u.units.size();
        auto primes = prime_factors(order);
        for (Elem g : u.units) {
            bool full = true;
            for (auto pr : primes)
                if (pow(g, order / pr) == one()) {
                    full = false;
                    break;
                }
            if (full) {
                u.generator = g;
                break;
            }
        }
        if (u.generator) {
            Elem cur = one();
            for (std::uint64_t i = 0; i < order; ++i) {
                u.dlog[cur] = static_cast<std::int64_t>(i);
                cur = mul(cur, *u.generator);
            }
        }
        return u;
    }

    RingSpec spec_;
    std::uint32_t size_ = 0;
    std::uint32_t base_size_ = 0;
    std::uint64_t unit_count_ = 0;
    std::shared_ptr<const Ring> base_;
    std::vector<std::uint16_t> mul_table_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
    std::vector<Elem> inverse_;
    mutable std::once_flag units_once_;
    mutable std::unique_ptr<UnitData> units_;
};

using RingPtr = std::shared_ptr<const Ring>;

}  // namespace rbw
