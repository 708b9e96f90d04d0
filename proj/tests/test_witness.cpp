#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "realizable/realize.hpp"
#include "realizable/witness.hpp"

#include <cstdint>

using namespace realizable;
using namespace realizable::witness;

namespace {

TransitionMatrix golden_mean() { return TransitionMatrix::from_rows({{1, 1}, {1, 0}}); }

}  // namespace

TEST_CASE("sft trace sequences") {
    auto lucas = sft_counts(golden_mean(), 6);
    CHECK(lucas == std::vector<bigint>{1, 3, 4, 7, 11, 18});

    auto full3 = sft_counts(TransitionMatrix::from_rows({{3}}), 4);
    CHECK(full3 == std::vector<bigint>{3, 9, 27, 81});

    auto zero = sft_counts(TransitionMatrix::from_rows({{0, 0}, {0, 0}}), 3);
    CHECK(zero == std::vector<bigint>{0, 0, 0});

    CHECK_THROWS_AS(TransitionMatrix::from_rows({{1, -1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(TransitionMatrix::from_rows({{1, 1}}), std::invalid_argument);
}

TEST_CASE("disjoint union adds counts") {
    auto a = golden_mean();
    auto b = TransitionMatrix::from_rows({{2}});
    auto u = disjoint_union(a, b);
    auto ca = sft_counts(a, 20);
    auto cb = sft_counts(b, 20);
    auto cu = sft_counts(u, 20);
    for (std::size_t i = 0; i < 20; ++i) CHECK(cu[i] == ca[i] + cb[i]);

    // P disjoint copies of the full P-shift: counts (P^2, P^3, ...)
    const int P = 3;
    TransitionMatrix acc;  // empty union is the identity element
    auto before = sft_counts(disjoint_union(acc, b), 5);
    CHECK(before == sft_counts(b, 5));
    for (int i = 0; i < P; ++i) acc = disjoint_union(acc, TransitionMatrix::from_rows({{P}}));
    auto counts = sft_counts(acc, 5);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(counts[n - 1] == pow_int(bigint(P), n + 1));
}

TEST_CASE("sft counts are realizable") {
    for (auto m : {golden_mean(), TransitionMatrix::from_rows({{2}}),
                   TransitionMatrix::from_rows({{1, 1, 0}, {0, 0, 1}, {1, 0, 1}}),
                   disjoint_union(golden_mean(), TransitionMatrix::from_rows({{2}}))}) {
        auto counts = sft_counts(m, 60);
        auto v = realize::check_realizable_terms(counts, 60);
        CHECK(v.status == realize::Status::PASS);
    }
}

TEST_CASE("fixed maps") {
    FunctionalGraph ident{5, {0, 1, 2, 3, 4}, 0};
    for (std::uint64_t n = 1; n <= 6; ++n) CHECK(ident.fix_count(n) == 5);
    auto census = ident.cycle_census();
    CHECK(census.at(1) == 5);

    FunctionalGraph cycle{6, {1, 2, 3, 4, 5, 0}, 0};
    for (std::uint64_t n = 1; n <= 12; ++n) CHECK(cycle.fix_count(n) == (n % 6 == 0 ? 6 : 0));
    CHECK(cycle.cycle_census().at(6) == 1);
}

TEST_CASE("random maps are reproducible and self-consistent") {
    auto [g1, c1] = random_map_counts(12, 42, 24);
    auto [g2, c2] = random_map_counts(12, 42, 24);
    CHECK(g1.map == g2.map);
    CHECK(c1 == c2);
    auto [g3, c3] = random_map_counts(12, 43, 24);
    CHECK(g1.map != g3.map);

    // counts match independent per-point iteration (the defining oracle)
    for (std::uint64_t n = 1; n <= 24; ++n) {
        std::uint64_t count = 0;
        for (unsigned x = 0; x < g1.size; ++x) {
            unsigned y = x;
            for (std::uint64_t i = 0; i < n; ++i) y = g1.map[y];
            if (y == x) ++count;
        }
        CHECK(c1[n - 1] == count);
    }
    CHECK_THROWS_AS(random_map_counts(0, 1, 5), std::domain_error);
    CHECK_THROWS_AS(random_map_counts(21, 1, 5), std::domain_error);
}

TEST_CASE("cycle census matches Fix counts through Moebius inversion") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto [g, counts] = random_map_counts(10, seed, 20);
        auto census = g.cycle_census();
        for (std::uint64_t n = 1; n <= 20; ++n) {
            // Fix(T^n) = sum over cycle lengths l | n of l * (#cycles of length l)
            bigint expect = 0;
            for (const auto& [len, cnt] : census) {
                if (n % len == 0) expect += bigint(len) * cnt;
            }
            CHECK(counts[n - 1] == expect);
        }
    }
}
