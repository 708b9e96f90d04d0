#pragma once

// Generators of certified-realizable sequences: subshift-of-finite-type trace
// sequences, disjoint unions, and brute-force fixed-point counts of seeded
// random finite maps.

#include <cstdint>
#include <map>
#include <vector>

#include "realizable/bigint.hpp"
#include "realizable/errors.hpp"

namespace realizable::witness {

/// Square nonnegative integer matrix; trace(A^n) counts closed paths of
/// length n, so the trace sequence is realizable by construction.
struct TransitionMatrix {
    std::vector<std::vector<bigint>> a;

    std::size_t dim() const { return a.size(); }

    static TransitionMatrix from_rows(std::vector<std::vector<bigint>> rows) {
        for (const auto& r : rows) {
            if (r.size() != rows.size()) throw std::invalid_argument("transition matrix must be square");
            for (const auto& x : r) {
                if (x < 0) throw std::invalid_argument("transition matrix entries must be nonnegative");
            }
        }
        return {std::move(rows)};
    }
};

/// [trace(A^n)]_{n=1..n_max}, exact big-integer matrix powers.
inline std::vector<bigint> sft_counts(const TransitionMatrix& m, std::uint64_t n_max) {
    if (n_max < 1) throw std::domain_error("sft_counts: n_max must be >= 1");
    const std::size_t k = m.dim();
    std::vector<bigint> out;
    out.reserve(n_max);
    if (k == 0) {
        out.assign(n_max, bigint(0));
        return out;
    }
    auto p = m.a;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        bigint tr = 0;
        for (std::size_t i = 0; i < k; ++i) tr += p[i][i];
        out.push_back(tr);
        if (n == n_max) break;
        std::vector<std::vector<bigint>> next(k, std::vector<bigint>(k, bigint(0)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l) {
                if (p[i][l] == 0) continue;
                for (std::size_t j = 0; j < k; ++j) next[i][j] += p[i][l] * m.a[l][j];
            }
        p = std::move(next);
    }
    return out;
}

/// Block-diagonal union; the trace sequence of the union is the entrywise sum.
inline TransitionMatrix disjoint_union(const TransitionMatrix& a, const TransitionMatrix& b) {
    const std::size_t ka = a.dim(), kb = b.dim();
    std::vector<std::vector<bigint>> rows(ka + kb, std::vector<bigint>(ka + kb, bigint(0)));
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < ka; ++j) rows[i][j] = a.a[i][j];
    for (std::size_t i = 0; i < kb; ++i)
        for (std::size_t j = 0; j < kb; ++j) rows[ka + i][ka + j] = b.a[i][j];
    return {std::move(rows)};
}

/// The directed graph of a map on {0,...,m-1}; all periodic points lie on its
/// cycles.
struct FunctionalGraph {
    unsigned size = 0;
    std::vector<unsigned> map;
    std::uint64_t seed = 0;

    /// Fix(T^n) by iterating every point n steps -- the definitional oracle.
    std::uint64_t fix_count(std::uint64_t n) const {
        std::uint64_t count = 0;
        for (unsigned x = 0; x < size; ++x) {
            unsigned y = x;
            for (std::uint64_t i = 0; i < n; ++i) y = map[y];
            if (y == x) ++count;
        }
        return count;
    }

    /// Exact cycle-length census from the cycle decomposition.
    std::map<std::uint64_t, std::uint64_t> cycle_census() const {
        std::map<std::uint64_t, std::uint64_t> census;
        std::vector<bool> on_cycle(size, false);
        std::vector<bool> seen(size, false);
        for (unsigned start = 0; start < size; ++start) {
            if (seen[start]) continue;
            // walk until a repeat, then measure the cycle
            std::vector<unsigned> path;
            std::vector<int> pos(size, -1);
            unsigned x = start;
            while (!seen[x] && pos[x] < 0) {
                pos[x] = static_cast<int>(path.size());
                path.push_back(x);
                x = map[x];
            }
            if (pos[x] >= 0) {
                std::uint64_t len = path.size() - static_cast<std::size_t>(pos[x]);
                bool fresh = !on_cycle[x];
                if (fresh) {
                    ++census[len];
                    for (std::size_t i = static_cast<std::size_t>(pos[x]); i < path.size(); ++i) on_cycle[path[i]] = true;
                }
            }
            for (unsigned p : path) seen[p] = true;
        }
        return census;
    }
};

namespace detail {

/// splitmix64 (Steele, Lea, Flood 2014); fixed constants for reproducible
/// cross-implementation corpora.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

}  // namespace detail

/// Deterministic-from-seed random map on m points with its fixed-point counts
/// Fix(T^n) for n = 1..n_max.
inline std::pair<FunctionalGraph, std::vector<bigint>> random_map_counts(unsigned m, std::uint64_t seed,
                                                                         std::uint64_t n_max) {
    if (m < 1 || m > 20) throw std::domain_error("random_map_counts: size must be in 1..20");
    FunctionalGraph g;
    g.size = m;
    g.seed = seed;
    detail::SplitMix64 rng(seed);
    for (unsigned i = 0; i < m; ++i) g.map.push_back(static_cast<unsigned>(rng.next() % m));
    std::vector<bigint> counts;
    for (std::uint64_t n = 1; n <= n_max; ++n) counts.push_back(g.fix_count(n));
    return {std::move(g), std::move(counts)};
}

}  // namespace realizable::witness
