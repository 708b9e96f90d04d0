#pragma once

// Integer linear recurrences: exact terms, terms modulo m via companion-matrix
// powering with big-integer exponents, Berlekamp-Massey minimal-polynomial
// recovery over exact rationals, and hypothesis validation for the theorem
// drivers. Sequences are indexed from n = 1.

#include <cstdint>
#include <string>
#include <vector>

#include "realizable/arith.hpp"
#include "realizable/bigint.hpp"
#include "realizable/errors.hpp"
#include "realizable/polyalg.hpp"

namespace realizable::recurrence {

/// Order-k recurrence u_{n+k} = a_1 u_{n+k-1} + ... + a_k u_n with stored
/// initial window u_1..u_k. Construction is lenient; check_hypotheses reports
/// which theorem hypotheses hold.
struct LinearRecurrence {
    std::vector<bigint> coeffs;    // a_1..a_k
    std::vector<bigint> initials;  // u_1..u_k

    unsigned order() const { return static_cast<unsigned>(coeffs.size()); }
};

inline LinearRecurrence make_recurrence(std::vector<bigint> coeffs, std::vector<bigint> initials) {
    if (coeffs.empty() || coeffs.size() != initials.size()) {
        throw std::invalid_argument("make_recurrence: coefficient and initial lists must be nonempty and of equal length");
    }
    return {std::move(coeffs), std::move(initials)};
}

/// The k-generalized Fibonacci recurrence: all coefficients 1, initial window
/// grown from the seed (0,...,0,1) below index 1, i.e. (1, 1, 2, 4, ..., 2^{k-2}).
inline LinearRecurrence kth_fibonacci_recurrence(unsigned k) {
    if (k < 2) throw std::domain_error("kth_fibonacci_recurrence: k must be >= 2");
    std::vector<bigint> window(k, bigint(0));  // F_{2-k}..F_1 seed, last entry F_1 = 1
    window.back() = 1;
    std::vector<bigint> initials{1};
    while (initials.size() < k) {
        bigint next = 0;
        for (const auto& x : window) next += x;
        window.erase(window.begin());
        window.push_back(next);
        initials.push_back(next);
    }
    return {std::vector<bigint>(k, bigint(1)), std::move(initials)};
}

/// k x k companion matrix: first row a_1..a_k, ones on the subdiagonal.
using CompanionMatrix = std::vector<std::vector<bigint>>;

inline CompanionMatrix companion_matrix(const LinearRecurrence& rec) {
    const unsigned k = rec.order();
    CompanionMatrix m(k, std::vector<bigint>(k, bigint(0)));
    for (unsigned j = 0; j < k; ++j) m[0][j] = rec.coeffs[j];
    for (unsigned i = 1; i < k; ++i) m[i][i - 1] = 1;
    return m;
}

inline std::uint64_t default_digit_cap_bits() { return 1ull << 25; }

namespace detail {

inline CompanionMatrix mat_mul(const CompanionMatrix& a, const CompanionMatrix& b) {
    const std::size_t k = a.size();
    CompanionMatrix r(k, std::vector<bigint>(k, bigint(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < k; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

inline double log2_coeff_growth(const LinearRecurrence& rec) {
    double s = 1.0;
    for (const auto& a : rec.coeffs) s += std::abs(static_cast<double>(a));
    return std::log2(s);
}

}  // namespace detail

/// Estimated bit length of u_n; used for the exact-term cost cap.
inline double estimate_term_bits(const LinearRecurrence& rec, const bigint& n) {
    double init_bits = 1.0;
    for (const auto& u : rec.initials) {
        init_bits = std::max(init_bits, static_cast<double>(boost::multiprecision::msb(boost::multiprecision::abs(u) + 1) + 1));
    }
    return static_cast<double>(n) * detail::log2_coeff_growth(rec) + init_bits;
}

/// Exact u_n. Linear iteration for small n, companion-matrix binary powering
/// above the crossover. Refuses (cost_cap_error) when the estimated result
/// size exceeds digit_cap_bits.
inline bigint term_exact(const LinearRecurrence& rec, const bigint& n,
                         std::uint64_t digit_cap_bits = default_digit_cap_bits()) {
    if (n < 1) throw std::domain_error("term_exact: n must be >= 1");
    const unsigned k = rec.order();
    if (n <= k) return rec.initials[static_cast<std::size_t>(static_cast<std::uint64_t>(n) - 1)];
    if (estimate_term_bits(rec, n) > static_cast<double>(digit_cap_bits)) {
        throw cost_cap_error("term_exact: estimated size exceeds the digit cap at index " + n.str());
    }
    if (n <= 10000) {
        std::vector<bigint> w = rec.initials;  // u_{j-k+1}..u_j
        for (bigint j = k; j < n; ++j) {
            bigint next = 0;
            for (unsigned i = 0; i < k; ++i) next += rec.coeffs[i] * w[k - 1 - i];
            w.erase(w.begin());
            w.push_back(next);
        }
        return w.back();
    }
    // state v_m = (u_{m+k-1},...,u_m)^T satisfies v_n = C^{n-1} v_1
    CompanionMatrix pow(k, std::vector<bigint>(k, bigint(0)));
    for (unsigned i = 0; i < k; ++i) pow[i][i] = 1;
    CompanionMatrix base = companion_matrix(rec);
    bigint e = n - 1;
    while (e > 0) {
        if ((e & 1) != 0) pow = detail::mat_mul(pow, base);
        e >>= 1;
        if (e > 0) base = detail::mat_mul(base, base);
    }
    bigint u = 0;
    for (unsigned j = 0; j < k; ++j) u += pow[k - 1][j] * rec.initials[k - 1 - j];
    return u;
}

/// u_n mod m via square-and-multiply on the companion matrix over the bits of
/// the (possibly huge) exponent n-1. Never materializes u_n.
inline std::uint64_t term_mod(const LinearRecurrence& rec, const bigint& n, std::uint64_t m) {
    if (n < 1) throw std::domain_error("term_mod: n must be >= 1");
    if (m < 2) throw std::domain_error("term_mod: modulus must be >= 2");
    const unsigned k = rec.order();
    auto red = [&](const bigint& x) {
        bigint r = x % m;
        if (r < 0) r += m;
        return static_cast<std::uint64_t>(r);
    };
    if (n <= k) return red(rec.initials[static_cast<std::size_t>(static_cast<std::uint64_t>(n) - 1)]);

    using Mat = std::vector<std::vector<std::uint64_t>>;
    auto mul = [&](const Mat& a, const Mat& b) {
        Mat r(k, std::vector<std::uint64_t>(k, 0));
        for (unsigned i = 0; i < k; ++i)
            for (unsigned l = 0; l < k; ++l) {
                if (a[i][l] == 0) continue;
                unsigned __int128 ail = a[i][l];
                for (unsigned j = 0; j < k; ++j) {
                    r[i][j] = static_cast<std::uint64_t>((r[i][j] + ail * b[l][j]) % m);
                }
            }
        return r;
    };
    Mat base(k, std::vector<std::uint64_t>(k, 0));
    for (unsigned j = 0; j < k; ++j) base[0][j] = red(rec.coeffs[j]);
    for (unsigned i = 1; i < k; ++i) base[i][i - 1] = 1 % m;
    Mat acc(k, std::vector<std::uint64_t>(k, 0));
    for (unsigned i = 0; i < k; ++i) acc[i][i] = 1 % m;
    bigint e = n - 1;
    while (e > 0) {
        if ((e & 1) != 0) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    unsigned __int128 u = 0;
    for (unsigned j = 0; j < k; ++j) u += static_cast<unsigned __int128>(acc[k - 1][j]) * red(rec.initials[k - 1 - j]);
    return static_cast<std::uint64_t>(u % m);
}

/// Minimal polynomial of the shortest recurrence annihilating the supplied
/// window, by Berlekamp-Massey over exact rationals, cleared of denominators.
/// 2L terms are required to certify degree L.
inline polyalg::IntPolynomial minimal_polynomial(const std::vector<bigint>& terms) {
    const std::size_t n_terms = terms.size();
    if (n_terms < 2) throw needs_more_data_error("minimal_polynomial: need at least 2 terms");
    std::vector<bigrat> conn{1}, prev{1};
    std::size_t L = 0, m = 1;
    bigrat last_disc = 1;
    for (std::size_t n = 0; n < n_terms; ++n) {
        bigrat d = bigrat(terms[n]);
        for (std::size_t i = 1; i <= L; ++i) d += conn[i] * bigrat(terms[n - i]);
        if (d == 0) {
            ++m;
        } else if (2 * L <= n) {
            std::vector<bigrat> tmp = conn;
            bigrat coef = d / last_disc;
            conn.resize(std::max(conn.size(), prev.size() + m), bigrat(0));
            for (std::size_t i = 0; i < prev.size(); ++i) conn[i + m] -= coef * prev[i];
            L = n + 1 - L;
            prev = std::move(tmp);
            last_disc = d;
            m = 1;
        } else {
            bigrat coef = d / last_disc;
            conn.resize(std::max(conn.size(), prev.size() + m), bigrat(0));
            for (std::size_t i = 0; i < prev.size(); ++i) conn[i + m] -= coef * prev[i];
            ++m;
        }
    }
    if (2 * L > n_terms) {
        throw needs_more_data_error("minimal_polynomial: " + std::to_string(2 * L) +
                                    " terms needed to certify degree " + std::to_string(L));
    }
    // connection relation s_n + c_1 s_{n-1} + ... + c_L s_{n-L} = 0
    // gives the polynomial X^L + c_1 X^{L-1} + ... + c_L; clear denominators.
    bigint den = 1;
    for (std::size_t i = 0; i <= L; ++i) den = boost::multiprecision::lcm(den, bigint(boost::multiprecision::denominator(conn[i])));
    std::vector<bigint> coeffs(L + 1);
    for (std::size_t i = 0; i <= L; ++i) {
        bigrat scaled = conn[i] * bigrat(den);
        coeffs[L - i] = bigint(boost::multiprecision::numerator(scaled));
    }
    polyalg::IntPolynomial p(std::move(coeffs));
    bigint ct = p.content();
    if (!p.is_zero()) {
        if (p.lc() < 0) ct = -ct;
        for (auto& x : p.c) x /= ct;
    }
    return p;
}

/// Theorem-hypothesis flags; thm1_part_ii_ok() is the full conjunction.
struct HypothesisReport {
    bool simple_zeros = false;       // discriminant of the characteristic polynomial nonzero
    bool nonneg_coeffs = false;      // a_i >= 0 for all i
    bool a_k_nonzero = false;        // minimality prerequisite
    bool not_pure_shift = false;     // (a_1,...,a_k) != (0,...,0,1)
    bool positive_initials = false;  // u_i >= 1 for all i
    bool minimal_order = false;      // recovered minimal polynomial has degree k

    bool thm1_part_ii_ok() const {
        return simple_zeros && nonneg_coeffs && a_k_nonzero && not_pure_shift &&
               positive_initials && minimal_order;
    }
    std::string first_failed() const {
        if (!simple_zeros) return "simple_zeros";
        if (!nonneg_coeffs) return "nonneg_coeffs";
        if (!a_k_nonzero) return "a_k_nonzero";
        if (!not_pure_shift) return "not_pure_shift";
        if (!positive_initials) return "positive_initials";
        if (!minimal_order) return "minimal_order";
        return "";
    }
};

}  // namespace realizable::recurrence

namespace realizable::polyalg {

/// Characteristic polynomial X^k - a_1 X^{k-1} - ... - a_k.
inline IntPolynomial char_poly(const recurrence::LinearRecurrence& rec) {
    const unsigned k = rec.order();
    std::vector<bigint> c(k + 1);
    c[k] = 1;
    for (unsigned i = 0; i < k; ++i) c[k - 1 - i] = -rec.coeffs[i];
    return IntPolynomial(std::move(c));
}

}  // namespace realizable::polyalg

namespace realizable::recurrence {

inline HypothesisReport check_hypotheses(const LinearRecurrence& rec) {
    const unsigned k = rec.order();
    HypothesisReport r;
    r.a_k_nonzero = rec.coeffs.back() != 0;
    r.nonneg_coeffs = true;
    for (const auto& a : rec.coeffs) {
        if (a < 0) r.nonneg_coeffs = false;
    }
    std::vector<bigint> pure_shift(k, bigint(0));
    pure_shift.back() = 1;
    r.not_pure_shift = rec.coeffs != pure_shift;
    r.positive_initials = true;
    for (const auto& u : rec.initials) {
        if (u < 1) r.positive_initials = false;
    }
    r.simple_zeros = polyalg::discriminant(polyalg::char_poly(rec)) != 0;
    std::vector<bigint> window;
    for (unsigned n = 1; n <= 2 * k; ++n) window.push_back(term_exact(rec, n));
    try {
        r.minimal_order = minimal_polynomial(window).degree() == static_cast<int>(k);
    } catch (const needs_more_data_error&) {
        r.minimal_order = false;
    }
    return r;
}

}  // namespace realizable::recurrence
