#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "realizable/arith.hpp"

#include <cstdint>
#include <vector>

using namespace realizable;
using namespace realizable::arith;

namespace {

// independent trial-division oracle for small inputs
bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("factor basics") {
    CHECK(factor(1).empty());
    CHECK(factor(12) == Factorization{{2, 2}, {3, 1}});
    CHECK(trial_division_prime(999983));
    CHECK(factor(999983) == Factorization{{999983, 1}});
    CHECK(factor(2) == Factorization{{2, 1}});
    CHECK_THROWS_AS(factor(0), unsupported_input_error);
}

TEST_CASE("factor reconstructs its input with certified primes") {
    for (std::uint64_t n : {2ull, 97ull, 1024ull, 600851475143ull, 9999999967ull * 2, (1ull << 62) + 1}) {
        std::uint64_t prod = 1;
        std::uint64_t last = 0;
        for (const auto& pp : factor(n)) {
            CHECK(pp.prime > last);
            CHECK(is_prime_u64(pp.prime));
            last = pp.prime;
            for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("mobius values") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
}

TEST_CASE("mobius divisor-sum identity") {
    for (std::uint64_t n = 1; n <= 500; ++n) {
        int s = 0;
        for (std::uint64_t d : divisors(n)) s += mobius(d);
        CHECK(s == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("divisors") {
    CHECK(divisors(1) == std::vector<std::uint64_t>{1});
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(999983) == std::vector<std::uint64_t>{1, 999983});
}

TEST_CASE("divisors pair into complements; radical and valuation consistency") {
    for (std::uint64_t n = 1; n <= 300; ++n) {
        auto ds = divisors(n);
        for (std::uint64_t d : ds) CHECK(n % d == 0);
        for (std::size_t i = 0; i < ds.size(); ++i) CHECK(ds[i] * ds[ds.size() - 1 - i] == n);
        std::uint64_t r = radical(n);
        CHECK(n % r == 0);
        std::uint64_t rebuilt = 1;
        for (const auto& pp : factor(r)) {
            unsigned w = valuation(bigint(n), pp.prime);
            for (unsigned e = 0; e < w; ++e) rebuilt *= pp.prime;
        }
        CHECK(rebuilt == n);
    }
}

TEST_CASE("radical") {
    CHECK(radical(1) == 1);
    CHECK(radical(12) == 6);
    CHECK(radical(1024) == 2);
}

TEST_CASE("valuation") {
    CHECK(valuation(bigint(12), 2) == 2);
    CHECK(valuation(bigint(12), 5) == 0);
    CHECK(valuation(bigint(3) * (bigint(1) << 20), 2) == 20);
    CHECK_THROWS_AS(valuation(bigint(12), 4), std::domain_error);
    CHECK_THROWS_AS(valuation(bigint(0), 2), std::domain_error);
}

TEST_CASE("mobius inversion round trip") {
    // g_d = sum_{e|d} mu(d/e) a_e must satisfy a_n = sum_{d|n} g_d
    auto a = [](std::uint64_t n) { return static_cast<std::int64_t>(n * n + 3 * n + 7); };
    for (std::uint64_t n = 1; n <= 500; ++n) {
        std::int64_t total = 0;
        for (std::uint64_t d : divisors(n)) {
            std::int64_t g = 0;
            for (std::uint64_t e : divisors(d)) g += mobius(d / e) * a(e);
            total += g;
        }
        CHECK(total == a(n));
    }
}
