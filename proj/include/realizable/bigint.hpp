#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace realizable {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

inline bigint pow_int(const bigint& base, std::uint64_t e) {
    bigint r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline bigrat pow_rat(const bigrat& base, std::uint64_t e) {
    bigrat r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Exact integer square-root test; no floating point involved.
inline bool is_perfect_square(const bigint& n) {
    if (n < 0) return false;
    bigint r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

}  // namespace realizable
