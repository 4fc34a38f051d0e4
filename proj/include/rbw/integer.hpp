#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace rbw {

/// Arbitrary-precision integer used for every relation matrix and SNF.
using Integer = mpz_class;

inline Integer abs_value(const Integer& x) { return abs(x); }

/// Sign of |a| - |b|.
inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> ext_gcd(const Integer& a, const Integer& b) {
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, s, t};
}

/// Floor division (rounds toward -infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Integer& d, const Integer& x) {
    if (d == 0) return x == 0;
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        auto r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace rbw
