#pragma once

// Elementary integer number theory shared by the other modules: factorization,
// divisor enumeration, Moebius function, radical and p-adic valuations.
// Everything here is pure and stateless.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "realizable/bigint.hpp"
#include "realizable/errors.hpp"

namespace realizable::arith {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization, primes strictly increasing. factor(1) is empty.
using Factorization = std::vector<PrimePower>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs (fixed base set covers the range).
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < r - 1; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Brent-cycle Pollard rho; n composite, odd, not a prime power of a tiny prime.
inline std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    std::uint64_t c = 1;
    for (;;) {
        std::uint64_t x = 2, y = 2, d = 1;
        auto step = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        primes.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, primes);
    factor_into(n / d, primes);
}

}  // namespace detail

/// Factor n for 1 <= n <= 2^63: trial division to 2^16, then Pollard rho with
/// a deterministic primality certificate.
inline Factorization factor(std::uint64_t n) {
    if (n == 0 || n > (1ull << 63)) {
        throw unsupported_input_error("factor: input must be in [1, 2^63]");
    }
    Factorization out;
    for (std::uint64_t p = 2; p <= 65536 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        detail::factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.push_back({rest[i], static_cast<unsigned>(j - i)});
            i = j;
        }
    }
    return out;
}

/// Moebius function: 0 unless squarefree, else (-1)^{#prime factors}.
inline int mobius(std::uint64_t n) {
    Factorization f = factor(n);
    for (const auto& pp : f) {
        if (pp.exponent > 1) return 0;
    }
    return f.size() % 2 == 0 ? 1 : -1;
}

/// All divisors of n, ascending.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (const auto& pp : factor(n)) {
        std::size_t base = out.size();
        std::uint64_t q = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            q *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Product of the distinct prime divisors; radical(1) = 1.
inline std::uint64_t radical(std::uint64_t n) {
    std::uint64_t r = 1;
    for (const auto& pp : factor(n)) r *= pp.prime;
    return r;
}

/// Largest w with p^w | n, for n != 0 and p prime.
inline unsigned valuation(const bigint& n, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::domain_error("valuation: p is not prime");
    if (n == 0) throw std::domain_error("valuation: n must be nonzero");
    bigint m = boost::multiprecision::abs(n);
    unsigned w = 0;
    while (m % p == 0) {
        m /= p;
        ++w;
    }
    return w;
}

/// Least prime factor; n >= 2.
inline std::uint64_t least_prime_factor(std::uint64_t n) {
    return factor(n).front().prime;
}

/// Number of divisors tau(n).
inline std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t t = 1;
    for (const auto& pp : factor(n)) t *= pp.exponent + 1;
    return t;
}

}  // namespace realizable::arith
