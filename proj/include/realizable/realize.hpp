#pragma once

// Dold sums, conditions (D) and (S), orbit censuses, minimal-multiplier
// search, sufficiency-parameter derivation, and the theorem drivers.

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "realizable/arith.hpp"
#include "realizable/bigint.hpp"
#include "realizable/errors.hpp"
#include "realizable/polyalg.hpp"
#include "realizable/recurrence.hpp"

namespace realizable::realize {

using recurrence::LinearRecurrence;

/// The sampled-and-scaled sequence a_n = M * u_{n^s}. The index n^s is
/// carried as a big integer and never needs to fit a machine word.
struct SampledSequence {
    LinearRecurrence base;
    bigint multiplier;       // M, nonzero; negative only for the Theorem 3 driver
    std::uint64_t exponent;  // s >= 1

    bigint index(std::uint64_t n) const { return pow_int(bigint(n), exponent); }

    bigint term(std::uint64_t n, std::uint64_t digit_cap_bits = recurrence::default_digit_cap_bits()) const {
        return multiplier * recurrence::term_exact(base, index(n), digit_cap_bits);
    }

    std::uint64_t term_mod(std::uint64_t n, std::uint64_t m) const {
        std::uint64_t u = recurrence::term_mod(base, index(n), m);
        bigint r = (multiplier % m) * u % m;
        if (r < 0) r += m;
        return static_cast<std::uint64_t>(r);
    }
};

enum class Condition { D, S };
enum class Status { PASS, FAIL, UNKNOWN };

struct Issue {
    std::uint64_t n = 0;
    Condition condition = Condition::D;
    std::string detail;
};

struct Verdict {
    Status status = Status::PASS;
    std::optional<Issue> first_issue;
    std::uint64_t checked_up_to = 0;
};

/// Sum over divisors d of n of mu(n/d) * a_d.
inline bigint dold_sum_exact(const std::function<bigint(std::uint64_t)>& term, std::uint64_t n) {
    bigint s = 0;
    for (std::uint64_t d : arith::divisors(n)) {
        int mu = arith::mobius(n / d);
        if (mu != 0) s += mu * term(d);
    }
    return s;
}

/// Condition (D) at index n, evaluated entirely modulo n.
inline bool dold_check_mod(const SampledSequence& seq, std::uint64_t n) {
    if (n == 1) return true;
    bigint s = 0;
    for (std::uint64_t d : arith::divisors(n)) {
        int mu = arith::mobius(n / d);
        if (mu != 0) s += mu * static_cast<std::int64_t>(recurrence::term_mod(seq.base, seq.index(d), n));
    }
    bigint r = (seq.multiplier % n) * (s % n) % n;
    return r == 0;
}

// ---------------------------------------------------------------------------
// Sign condition
// ---------------------------------------------------------------------------

enum class SignStrategy { exact, bound, automatic };
enum class SignResult { NONNEG, NEG, UNKNOWN };

/// Data backing the bound strategy: a certified dominant-root interval and the
/// growth offset n0 with u_n <= lambda^{n+n0}.
struct SignContext {
    polyalg::RationalInterval lambda;
    std::uint64_t n0 = 0;
    unsigned k = 0;
};

namespace detail {

/// Smallest n0 >= 0 with lambda_lo^{n0} >= max initial term; conservative
/// stand-in for ceil(log max(u_i) / log lambda).
inline std::uint64_t growth_offset(const LinearRecurrence& rec, const bigrat& lambda_lo) {
    bigint max_u = 1;
    for (const auto& u : rec.initials) max_u = std::max(max_u, bigint(u));
    bigrat p = 1;
    std::uint64_t n0 = 0;
    while (p < max_u) {
        p *= lambda_lo;
        ++n0;
    }
    return n0;
}

/// Certified floor(q * log2 x) for rational x > 1, by exact comparison of x^q
/// against powers of two.
inline std::int64_t floor_qlog2(const bigrat& x, std::uint64_t q) {
    bigrat xq = pow_rat(x, q);
    double est = static_cast<double>(q) * std::log2(static_cast<double>(x));
    std::int64_t p = static_cast<std::int64_t>(est);
    auto ge_pow2 = [&](std::int64_t e) {
        if (e >= 0) return xq >= pow_int(bigint(2), static_cast<std::uint64_t>(e));
        return xq * pow_int(bigint(2), static_cast<std::uint64_t>(-e)) >= 1;
    };
    while (!ge_pow2(p)) --p;
    while (ge_pow2(p + 1)) ++p;
    return p;
}

}  // namespace detail

inline SignContext make_sign_context(const LinearRecurrence& rec,
                                     std::optional<std::uint64_t> n0_override = std::nullopt,
                                     unsigned root_precision_bits = 40) {
    auto hyp = recurrence::check_hypotheses(rec);
    if (!hyp.nonneg_coeffs || !hyp.a_k_nonzero || !hyp.not_pure_shift || !hyp.positive_initials) {
        throw hypothesis_violation_error("sign bound: positivity hypothesis failed: " + hyp.first_failed());
    }
    auto lambda = polyalg::dominant_root(polyalg::char_poly(rec), root_precision_bits);
    std::uint64_t n0 = n0_override ? *n0_override : detail::growth_offset(rec, lambda.lo);
    return {lambda, n0, rec.order()};
}

/// Bound-strategy certificate at index n: NONNEG when the certified lower
/// bound lambda_lo^{n^s - k} on the leading term dominates the certified
/// upper bound (tau(n)-1) * lambda_hi^{(n/p_min)^s + n0} on the sum of all
/// proper-divisor terms. Entirely integer arithmetic; UNKNOWN when the
/// certificate does not close, never a guess.
inline SignResult sign_check_bound(const SampledSequence& seq, std::uint64_t n, const SignContext& ctx) {
    if (seq.multiplier <= 0) {
        throw hypothesis_violation_error("sign bound: requires a positive multiplier");
    }
    if (n == 1) return SignResult::NONNEG;  // single divisor, positive initials
    bigint A = seq.index(n) - ctx.k;
    std::uint64_t tau = arith::divisor_count(n);
    bigint B = pow_int(bigint(n / arith::least_prime_factor(n)), seq.exponent) + ctx.n0;
    if (A <= B) return SignResult::UNKNOWN;
    bigint T = tau - 1;

    for (std::uint64_t q = 64; q <= 4096; q *= 2) {
        std::int64_t p_lo = detail::floor_qlog2(ctx.lambda.lo, q);
        if (p_lo < 1) continue;  // lambda too close to 1 at this granularity
        std::int64_t p_hi = detail::floor_qlog2(ctx.lambda.hi, q) + 1;
        bigint lhs = A * p_lo / q;                    // floor
        bigint rhs = (B * p_hi + q - 1) / q;         // ceil
        std::uint64_t t_bits = T > 0 ? boost::multiprecision::msb(T) + 1 : 0;
        if (lhs >= rhs + t_bits) return SignResult::NONNEG;
    }
    return SignResult::UNKNOWN;
}

struct SignOptions {
    std::uint64_t digit_cap_bits = recurrence::default_digit_cap_bits();
    std::optional<SignContext> ctx;  // built on demand when absent
};

inline SignResult sign_check(const SampledSequence& seq, std::uint64_t n, SignStrategy strategy,
                             const SignOptions& opts = {}) {
    auto exact = [&]() {
        bigint s = dold_sum_exact([&](std::uint64_t d) { return seq.term(d, opts.digit_cap_bits); }, n);
        return s >= 0 ? SignResult::NONNEG : SignResult::NEG;
    };
    auto bound = [&]() {
        if (opts.ctx) return sign_check_bound(seq, n, *opts.ctx);
        return sign_check_bound(seq, n, make_sign_context(seq.base));
    };
    switch (strategy) {
        case SignStrategy::exact:
            return exact();
        case SignStrategy::bound:
            return bound();
        case SignStrategy::automatic:
        default:
            if (recurrence::estimate_term_bits(seq.base, seq.index(n)) <= static_cast<double>(opts.digit_cap_bits)) {
                return exact();
            }
            return bound();
    }
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

struct ScanOptions {
    SignStrategy sign = SignStrategy::automatic;
    std::uint64_t digit_cap_bits = recurrence::default_digit_cap_bits();
    unsigned threads = 1;
    std::optional<SignContext> ctx;
};

namespace detail {

// per-n outcome codes for the parallel scan
enum class NStatus : unsigned char { ok, d_fail, s_neg, s_unknown };

inline Verdict aggregate(const std::vector<NStatus>& status, std::uint64_t n_max,
                         const std::function<std::string(std::uint64_t, NStatus)>& describe) {
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        NStatus st = status[n - 1];
        if (st == NStatus::d_fail) {
            return {Status::FAIL, Issue{n, Condition::D, describe(n, st)}, n_max};
        }
        if (st == NStatus::s_neg) {
            return {Status::FAIL, Issue{n, Condition::S, describe(n, st)}, n_max};
        }
    }
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (status[n - 1] == NStatus::s_unknown) {
            return {Status::UNKNOWN, Issue{n, Condition::S, "bound strategy inconclusive"}, n_max};
        }
    }
    return {Status::PASS, std::nullopt, n_max};
}

template <typename PerN>
inline void run_scan(std::uint64_t n_max, unsigned threads, std::vector<NStatus>& status, PerN per_n) {
    if (threads <= 1) {
        for (std::uint64_t n = 1; n <= n_max; ++n) status[n - 1] = per_n(n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::uint64_t n = 1 + t; n <= n_max; n += threads) status[n - 1] = per_n(n);
            } catch (...) {
                std::scoped_lock lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace detail

/// Scan n = 1..n_max; FAIL at the first n where (D) fails or (S) is negative,
/// UNKNOWN if some (S) certificate was inconclusive, else PASS. The scan may
/// run across threads; the minimal failing index always wins.
inline Verdict check_realizable(const SampledSequence& seq, std::uint64_t n_max, ScanOptions opts = {}) {
    if (n_max < 1) throw std::domain_error("check_realizable: n_max must be >= 1");
    if (!opts.ctx && opts.sign != SignStrategy::exact) {
        // build the bound context once when it will be usable at all
        try {
            opts.ctx = make_sign_context(seq.base);
        } catch (const hypothesis_violation_error&) {
            if (opts.sign == SignStrategy::bound) throw;
        }
    }
    SignOptions sopts{opts.digit_cap_bits, opts.ctx};
    std::vector<detail::NStatus> status(n_max, detail::NStatus::ok);
    detail::run_scan(n_max, opts.threads, status, [&](std::uint64_t n) {
        if (!dold_check_mod(seq, n)) return detail::NStatus::d_fail;
        switch (sign_check(seq, n, opts.sign, sopts)) {
            case SignResult::NEG: return detail::NStatus::s_neg;
            case SignResult::UNKNOWN: return detail::NStatus::s_unknown;
            default: return detail::NStatus::ok;
        }
    });
    return detail::aggregate(status, n_max, [&](std::uint64_t n, detail::NStatus st) {
        if (st == detail::NStatus::d_fail) {
            bigint s = 0;
            for (std::uint64_t d : arith::divisors(n)) {
                int mu = arith::mobius(n / d);
                if (mu != 0) s += mu * static_cast<std::int64_t>(recurrence::term_mod(seq.base, seq.index(d), n));
            }
            bigint r = (seq.multiplier % n) * (s % n) % n;
            if (r < 0) r += n;
            return "Dold sum is " + r.str() + " mod " + std::to_string(n);
        }
        return std::string("Dold sum negative");
    });
}

/// Same scan for an explicitly listed sequence a_1..a_N (all conditions exact).
inline Verdict check_realizable_terms(const std::vector<bigint>& terms, std::uint64_t n_max) {
    if (n_max < 1 || n_max > terms.size()) throw std::domain_error("check_realizable_terms: bad n_max");
    auto term = [&](std::uint64_t d) { return terms[d - 1]; };
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        bigint s = dold_sum_exact(term, n);
        if (s % n != 0) {
            return {Status::FAIL, Issue{n, Condition::D, "Dold sum is " + s.str()}, n_max};
        }
        if (s < 0) {
            return {Status::FAIL, Issue{n, Condition::S, "Dold sum is " + s.str()}, n_max};
        }
    }
    return {Status::PASS, std::nullopt, n_max};
}

// ---------------------------------------------------------------------------
// Orbit census and multiplier search
// ---------------------------------------------------------------------------

/// Per-n closed-orbit counts O_n = (1/n) sum_{d|n} mu(n/d) a_d.
struct OrbitCensus {
    std::vector<std::pair<std::uint64_t, bigint>> counts;
};

inline OrbitCensus orbit_census(const std::function<bigint(std::uint64_t)>& term, std::uint64_t n_max) {
    OrbitCensus out;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        bigint s = dold_sum_exact(term, n);
        if (s % n != 0) {
            throw census_undefined_error("orbit_census: (D) fails at n = " + std::to_string(n), n);
        }
        if (s < 0) {
            throw census_undefined_error("orbit_census: negative orbit count at n = " + std::to_string(n), n);
        }
        out.counts.emplace_back(n, s / n);
    }
    return out;
}

/// Smallest M in [1, M_max] such that (M a_n) passes (D) for n <= n_max.
/// (S) is not consulted: positive scaling cannot change a Dold sum's sign.
inline std::optional<std::uint64_t> minimal_multiplier(const std::function<bigint(std::uint64_t)>& term,
                                                       std::uint64_t n_max, std::uint64_t m_max) {
    std::vector<std::uint64_t> residue(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        bigint r = dold_sum_exact(term, n) % n;
        if (r < 0) r += n;
        residue[n - 1] = static_cast<std::uint64_t>(r);
    }
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        bool ok = true;
        for (std::uint64_t n = 1; n <= n_max && ok; ++n) {
            ok = (m * residue[n - 1]) % n == 0;
        }
        if (ok) return m;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sufficiency parameters (Theorem 1 data)
// ---------------------------------------------------------------------------

struct ThmParams {
    bigint delta_F;
    bigint delta_K;
    bool delta_K_supplied = false;
    polyalg::GaloisInfo galois;
    bigint M;
    std::uint64_t s_min = 0;
    // growth data; present only when the positivity hypotheses hold
    std::optional<polyalg::RationalInterval> lambda;
    std::optional<std::uint64_t> n0;
    std::optional<std::uint64_t> n1;
    std::optional<std::uint64_t> ell0;
};

namespace detail {

/// Least n1 >= floor with lambda_lo^n >= n^2 from n1 on (certified by the
/// induction step lambda_lo * n^2 >= (n+1)^2).
inline std::uint64_t certify_n1(const bigrat& lambda_lo, std::uint64_t floor_n1) {
    std::uint64_t n = std::max<std::uint64_t>(floor_n1, 1);
    for (;;) {
        bigrat p = pow_rat(lambda_lo, n);
        if (p >= bigint(n) * n && lambda_lo * (bigint(n) * n) >= bigint(n + 1) * (n + 1)) return n;
        ++n;
    }
}

/// Smallest c >= 0 with lambda_lo^c >= n1; upper bound for log n1 / log lambda.
inline std::uint64_t log_upper_bound(const bigrat& lambda_lo, std::uint64_t n1) {
    bigrat p = 1;
    std::uint64_t c = 0;
    while (p < n1) {
        p *= lambda_lo;
        ++c;
    }
    return c;
}

}  // namespace detail

/// Derive the sufficiency parameters from the characteristic polynomial's
/// discriminant and Galois data: M = lcm(|Delta(K)|, |Delta(F)|), the minimal
/// admissible exponent, and the growth constants n0, n1, ell0.
inline ThmParams derive_params(const LinearRecurrence& rec,
                               std::optional<bigint> delta_K_override = std::nullopt,
                               bool conservative = false) {
    auto hyp = recurrence::check_hypotheses(rec);
    if (!hyp.simple_zeros) {
        throw hypothesis_violation_error("derive_params: characteristic polynomial has repeated zeros");
    }
    const unsigned k = rec.order();
    auto F = polyalg::char_poly(rec);
    ThmParams out;
    out.delta_F = polyalg::discriminant(F);

    bool irreducible = k <= 4 ? polyalg::is_irreducible(F) : false;
    if (delta_K_override) {
        out.delta_K = *delta_K_override;
        out.delta_K_supplied = true;
    } else if (k <= 4 && irreducible) {
        // for irreducible F, Delta(K) | Delta(F), so |Delta(F)| is an admissible stand-in
        out.delta_K = boost::multiprecision::abs(out.delta_F);
    } else {
        throw needs_override_error(
            k > 4 ? "derive_params: degree > 4 needs an explicit splitting-field discriminant"
                  : "derive_params: reducible characteristic polynomial needs an explicit splitting-field discriminant");
    }
    out.M = boost::multiprecision::lcm(boost::multiprecision::abs(out.delta_K),
                                       boost::multiprecision::abs(out.delta_F));

    if (!conservative && k >= 2 && k <= 4 && irreducible) {
        out.galois = polyalg::galois_group(F);
        out.s_min = *out.galois.order;  // N is itself a multiple of e(G)
    } else if (!conservative && k == 1) {
        out.galois = {polyalg::GaloisTag::TRIVIAL, 1, 1, polyalg::GaloisMethod::discriminant_test};
        out.s_min = 1;
    } else {
        out.galois = {polyalg::GaloisTag::UNKNOWN, std::nullopt, std::nullopt,
                      polyalg::GaloisMethod::fallback_factorial};
        out.s_min = polyalg::fallback_s(k);
    }

    if (hyp.nonneg_coeffs && hyp.a_k_nonzero && hyp.not_pure_shift && hyp.positive_initials) {
        auto lambda = polyalg::dominant_root(F, 40);
        std::uint64_t n0 = detail::growth_offset(rec, lambda.lo);
        std::uint64_t n1 = detail::certify_n1(lambda.lo, 2 * (n0 + k));
        std::uint64_t c = detail::log_upper_bound(lambda.lo, n1);
        std::uint64_t e = out.galois.exponent ? *out.galois.exponent : out.s_min;
        bigint target = bigint(n0) + k + c;
        std::uint64_t ell = 1;
        for (;;) {
            bigint lhs = pow_int(bigint(2), e * ell);
            if (lhs * (lhs - 1) > target) break;
            ++ell;
        }
        out.lambda = lambda;
        out.n0 = n0;
        out.n1 = n1;
        out.ell0 = ell;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Theorem drivers
// ---------------------------------------------------------------------------

struct Thm1Report {
    ThmParams params;
    std::uint64_t s = 0;
    bool sign_guaranteed = true;  // false when ell < ell0 (or ell0 unavailable)
    Verdict verdict;
};

inline Thm1Report verify_theorem1(const LinearRecurrence& rec, std::optional<bigint> delta_K_override,
                                  std::uint64_t ell, std::uint64_t n_max, ScanOptions opts = {}) {
    if (ell < 1) throw std::domain_error("verify_theorem1: ell must be >= 1");
    Thm1Report rep;
    rep.params = derive_params(rec, delta_K_override);
    rep.s = rep.params.s_min * ell;
    rep.sign_guaranteed = rep.params.ell0 && ell >= *rep.params.ell0;
    SampledSequence seq{rec, rep.params.M, rep.s};
    if (rep.params.lambda && !opts.ctx) {
        opts.ctx = SignContext{*rep.params.lambda, *rep.params.n0, rec.order()};
    }
    rep.verdict = check_realizable(seq, n_max, opts);
    return rep;
}

/// Theorem 2 driver: the k-generalized Fibonacci sequence with
/// M = |Delta(F^(k))| and s = k! * ell, using the growth constants n0 = 2k,
/// n1 = 10k in the bound strategy.
inline Verdict verify_theorem2(unsigned k, std::uint64_t ell, std::uint64_t n_max, ScanOptions opts = {}) {
    if (k < 2) throw std::domain_error("verify_theorem2: k must be >= 2");
    if (ell < 1) throw std::domain_error("verify_theorem2: ell must be >= 1");
    auto rec = recurrence::kth_fibonacci_recurrence(k);
    auto F = polyalg::char_poly(rec);
    bigint M = boost::multiprecision::abs(polyalg::discriminant(F));
    std::uint64_t s = polyalg::fallback_s(k) * ell;
    SampledSequence seq{rec, M, s};
    if (!opts.ctx) {
        opts.ctx = SignContext{polyalg::dominant_root(F, 40), 2ull * k, k};
    }
    return check_realizable(seq, n_max, opts);
}

struct Thm3Report {
    bigint M;                          // multiplier used for the main (D) check
    Verdict verdict;                   // (D)-only verdict; (S) is not claimed
    std::optional<Verdict> sharper;    // Q = 0: the |P|-multiplier claim
};

/// Theorem 3 driver: condition (D) for ((P^2-4Q) u_{n^2}) with u_0 = 0,
/// u_1 = 1 (stored as the shifted window u_1 = 1, u_2 = P). Only (D) is
/// checked; the conjecture claims nothing about (S).
inline Thm3Report verify_theorem3(const bigint& P, const bigint& Q, std::uint64_t n_max,
                                  unsigned threads = 1) {
    if (P == 0 && Q == 0) throw hypothesis_violation_error("verify_theorem3: (P,Q) = (0,0) is excluded");
    if (P * P == 4 * Q) throw hypothesis_violation_error("verify_theorem3: P^2 = 4Q gives a repeated root");
    auto rec = recurrence::make_recurrence({P, -Q}, {1, P});
    Thm3Report rep;
    rep.M = (P == 0 && Q == 1) ? bigint(4) : P * P - 4 * Q;

    auto scan_d_only = [&](const SampledSequence& seq) {
        std::vector<detail::NStatus> status(n_max, detail::NStatus::ok);
        detail::run_scan(n_max, threads, status, [&](std::uint64_t n) {
            return dold_check_mod(seq, n) ? detail::NStatus::ok : detail::NStatus::d_fail;
        });
        return detail::aggregate(status, n_max,
                                 [](std::uint64_t, detail::NStatus) { return std::string("(D) fails"); });
    };

    rep.verdict = scan_d_only(SampledSequence{rec, rep.M, 2});
    if (Q == 0 && P != 0) {
        rep.sharper = scan_d_only(SampledSequence{rec, boost::multiprecision::abs(P), 2});
    }
    return rep;
}

}  // namespace realizable::realize
