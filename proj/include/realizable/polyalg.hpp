#pragma once

// Integer-polynomial algebra: resultants and discriminants, factorization up
// to degree 4, Galois-group classification for small irreducible polynomials,
// and exact rational isolation of the dominant real root.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "realizable/arith.hpp"
#include "realizable/bigint.hpp"
#include "realizable/errors.hpp"

namespace realizable::polyalg {

/// Dense integer polynomial, coefficient of X^i at index i.
/// Normalized: the zero polynomial has an empty coefficient list.
struct IntPolynomial {
    std::vector<bigint> c;

    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<bigint> coeffs) : c(coeffs) { normalize(); }
    explicit IntPolynomial(std::vector<bigint> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const bigint& lc() const { return c.back(); }
    bigint coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : bigint(0); }

    bigint eval(const bigint& x) const {
        bigint acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    bigrat eval(const bigrat& x) const {
        bigrat acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + bigrat(*it);
        return acc;
    }

    IntPolynomial derivative() const {
        std::vector<bigint> d;
        for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<unsigned>(i));
        return IntPolynomial(std::move(d));
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<bigint> r(a.c.size() + b.c.size() - 1, bigint(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<bigint> r(std::max(a.c.size(), b.c.size()), bigint(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<bigint> r(std::max(a.c.size(), b.c.size()), bigint(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return IntPolynomial(std::move(r));
    }

    bigint content() const {
        bigint g = 0;
        for (const auto& x : c) g = boost::multiprecision::gcd(g, x);
        return g;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            bigint a = c[i];
            if (a == 0) continue;
            if (first) {
                if (a < 0) os << "-";
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            bigint m = boost::multiprecision::abs(a);
            if (m != 1 || i == 0) os << m;
            if (i >= 1) {
                os << "X";
                if (i >= 2) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }
};

/// Exact division over Q; returns the quotient iff g divides f with zero remainder.
inline std::optional<std::vector<bigrat>> divide_rational(const IntPolynomial& f, const IntPolynomial& g) {
    if (g.is_zero()) return std::nullopt;
    std::vector<bigrat> rem(f.c.begin(), f.c.end());
    int df = f.degree(), dg = g.degree();
    if (df < dg) return std::nullopt;
    std::vector<bigrat> q(static_cast<std::size_t>(df - dg + 1), bigrat(0));
    for (int i = df; i >= dg; --i) {
        bigrat t = rem[static_cast<std::size_t>(i)] / bigrat(g.lc());
        q[static_cast<std::size_t>(i - dg)] = t;
        if (t != 0) {
            for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(i - dg + j)] -= t * bigrat(g.c[static_cast<std::size_t>(j)]);
        }
    }
    for (const auto& r : rem) {
        if (r != 0) return std::nullopt;
    }
    return q;
}

/// Exact division over Z; empty when g does not divide f over the integers.
inline std::optional<IntPolynomial> divide_exact(const IntPolynomial& f, const IntPolynomial& g) {
    auto q = divide_rational(f, g);
    if (!q) return std::nullopt;
    std::vector<bigint> iq;
    iq.reserve(q->size());
    for (const auto& x : *q) {
        if (boost::multiprecision::denominator(x) != 1) return std::nullopt;
        iq.push_back(bigint(boost::multiprecision::numerator(x)));
    }
    return IntPolynomial(std::move(iq));
}

/// Primitive polynomial gcd over Q, returned with positive leading coefficient.
inline IntPolynomial gcd_poly(IntPolynomial a, IntPolynomial b) {
    auto to_primitive = [](const IntPolynomial& p) {
        if (p.is_zero()) return p;
        bigint ct = p.content();
        if (p.lc() < 0) ct = -ct;
        std::vector<bigint> r;
        for (const auto& x : p.c) r.push_back(x / ct);
        return IntPolynomial(std::move(r));
    };
    while (!b.is_zero()) {
        // pseudo-remainder of a by b
        IntPolynomial r = a;
        int db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            int shift = r.degree() - db;
            bigint lr = r.lc(), lb = b.lc();
            std::vector<bigint> nr(r.c.size(), bigint(0));
            for (std::size_t i = 0; i < r.c.size(); ++i) nr[i] = r.c[i] * lb;
            for (int j = 0; j <= db; ++j) nr[static_cast<std::size_t>(j + shift)] -= lr * b.c[static_cast<std::size_t>(j)];
            r = IntPolynomial(std::move(nr));
        }
        a = b;
        b = to_primitive(r);
    }
    return to_primitive(a);
}

/// Resultant via the Sylvester matrix and fraction-free (Bareiss) elimination.
/// Convention: Res(f,g) = lc(f)^{deg g} * prod g(alpha_i) over the roots of f.
inline bigint resultant(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant: zero polynomial");
    int m = f.degree(), n = g.degree();
    if (m == 0) return pow_int(f.c[0], static_cast<std::uint64_t>(n));
    if (n == 0) return pow_int(g.c[0], static_cast<std::uint64_t>(m));
    int dim = m + n;
    std::vector<std::vector<bigint>> s(static_cast<std::size_t>(dim), std::vector<bigint>(static_cast<std::size_t>(dim), bigint(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = f.c[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = g.c[static_cast<std::size_t>(n - j)];

    // Bareiss determinant
    bigint prev = 1;
    int sign = 1;
    for (int k = 0; k < dim - 1; ++k) {
        if (s[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < dim; ++i) {
                if (s[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) return 0;
            std::swap(s[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(swap_row)]);
            sign = -sign;
        }
        for (int i = k + 1; i < dim; ++i) {
            for (int j = k + 1; j < dim; ++j) {
                s[i][j] = (s[i][j] * s[k][k] - s[i][k] * s[k][j]) / prev;
            }
            s[i][k] = 0;
        }
        prev = s[k][k];
    }
    return sign * s[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(dim - 1)];
}

/// Discriminant: (-1)^{d(d-1)/2} Res(f, f') / lc(f). Zero iff f has a repeated root.
inline bigint discriminant(const IntPolynomial& f) {
    int d = f.degree();
    if (d < 1) throw std::domain_error("discriminant: degree must be >= 1");
    if (d == 1) return 1;
    bigint r = resultant(f, f.derivative());
    bigint val = r / f.lc();
    return (d * (d - 1) / 2) % 2 == 0 ? val : -val;
}

// ---------------------------------------------------------------------------
// Small-degree factorization
// ---------------------------------------------------------------------------

struct SmallFactor {
    IntPolynomial poly;  // primitive, positive leading coefficient, irreducible over Q
    unsigned multiplicity;
};

struct SmallFactorization {
    bigint unit;  // content with sign; unit * prod poly^mult == input
    std::vector<SmallFactor> factors;
};

namespace detail {

inline std::vector<bigint> signed_divisors(const bigint& n) {
    bigint m = boost::multiprecision::abs(n);
    std::vector<bigint> out;
    for (bigint d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            if (d * d != m) out.push_back(m / d);
        }
    }
    std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) out.push_back(-out[i]);
    return out;
}

inline void push_factor(std::vector<SmallFactor>& fs, const IntPolynomial& p) {
    for (auto& f : fs) {
        if (f.poly == p) {
            ++f.multiplicity;
            return;
        }
    }
    fs.push_back({p, 1});
}

// Quadratic splitting of a primitive quartic with no rational roots.
inline std::optional<std::pair<IntPolynomial, IntPolynomial>> split_quartic(const IntPolynomial& g) {
    const bigint lc = g.c[4], g3 = g.c[3], g2 = g.c[2], g1 = g.c[1], g0 = g.c[0];
    bigint norm2 = 0;
    for (const auto& x : g.c) norm2 += x * x;
    bigint bound = 16 * (boost::multiprecision::sqrt(norm2) + 1);
    for (const bigint& a : signed_divisors(lc)) {
        if (a <= 0) continue;  // overall sign fixed by the content
        bigint d = lc / a;
        for (const bigint& cc : signed_divisors(g0)) {
            bigint h = g0 / cc;
            // g = (a X^2 + b X + cc)(d X^2 + e X + h); solve the linear system for b, e
            bigint det = cc * d - a * h;
            if (det != 0) {
                bigint bn = (g3 * cc - a * g1);
                bigint en = (d * g1 - g3 * h);
                if (bn % det != 0 || en % det != 0) continue;
                bigint b = bn / det, e = en / det;
                if (a * h + b * e + cc * d == g2) {
                    return std::make_pair(IntPolynomial{cc, b, a}, IntPolynomial{h, e, d});
                }
            } else {
                for (bigint b = -bound; b <= bound; ++b) {
                    bigint en2 = g3 - b * d;
                    if (en2 % a != 0) continue;
                    bigint e = en2 / a;
                    if (b * h + cc * e == g1 && a * h + b * e + cc * d == g2) {
                        return std::make_pair(IntPolynomial{cc, b, a}, IntPolynomial{h, e, d});
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Factor a polynomial of degree 1..4 over the integers. Rational-root
/// extraction plus bounded search for quadratic factors; irreducibility is
/// certified when no factor exists.
inline SmallFactorization factor_small(const IntPolynomial& f) {
    int deg = f.degree();
    if (deg < 1 || deg > 4) throw unsupported_input_error("factor_small: degree must be in 1..4");

    SmallFactorization out;
    bigint ct = f.content();
    if (f.lc() < 0) ct = -ct;
    std::vector<bigint> pc;
    for (const auto& x : f.c) pc.push_back(x / ct);
    IntPolynomial g(std::move(pc));
    out.unit = ct;

    // factors of X
    while (!g.is_zero() && g.c[0] == 0) {
        detail::push_factor(out.factors, IntPolynomial{0, 1});
        g = *divide_exact(g, IntPolynomial{0, 1});
    }

    // rational roots p/q: p | g(0), q | lc(g); factor is (q X - p), primitive
    bool found = true;
    while (g.degree() >= 1 && found) {
        found = false;
        for (const bigint& q : detail::signed_divisors(g.lc())) {
            if (q <= 0) continue;
            for (const bigint& p : detail::signed_divisors(g.c[0])) {
                if (boost::multiprecision::gcd(p, q) != 1) continue;
                IntPolynomial lin{-p, q};
                if (auto quo = divide_exact(g, lin)) {
                    detail::push_factor(out.factors, lin);
                    g = *quo;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    }

    if (g.degree() == 4) {
        if (auto qq = detail::split_quartic(g)) {
            auto handle_quadratic = [&](IntPolynomial q) {
                bigint qc = q.content();
                if (q.lc() < 0) qc = -qc;
                if (qc != 1) {
                    std::vector<bigint> r;
                    for (const auto& x : q.c) r.push_back(x / qc);
                    q = IntPolynomial(std::move(r));
                    out.unit *= qc;
                }
                detail::push_factor(out.factors, q);
            };
            handle_quadratic(qq->first);
            handle_quadratic(qq->second);
            g = IntPolynomial{1};
        }
    }

    if (g.degree() >= 1) {
        detail::push_factor(out.factors, g);
    } else if (!g.is_zero() && g.c[0] != 1) {
        out.unit *= g.c[0];
    }
    return out;
}

/// True when f (degree 1..4) is irreducible over Q.
inline bool is_irreducible(const IntPolynomial& f) {
    auto fac = factor_small(f);
    return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1 &&
           fac.factors[0].poly.degree() == f.degree();
}

// ---------------------------------------------------------------------------
// Galois groups of irreducible polynomials of degree <= 4
// ---------------------------------------------------------------------------

enum class GaloisTag { TRIVIAL, C2, C3, S3, C4, V4, D4, A4, S4, UNKNOWN };
enum class GaloisMethod { discriminant_test, resolvent_cubic, user_supplied, fallback_factorial };

struct GaloisInfo {
    GaloisTag tag = GaloisTag::UNKNOWN;
    std::optional<std::uint64_t> order;     // N = |G|
    std::optional<std::uint64_t> exponent;  // e(G)
    GaloisMethod method = GaloisMethod::fallback_factorial;
};

inline const char* galois_tag_name(GaloisTag t) {
    switch (t) {
        case GaloisTag::TRIVIAL: return "trivial";
        case GaloisTag::C2: return "C2";
        case GaloisTag::C3: return "C3";
        case GaloisTag::S3: return "S3";
        case GaloisTag::C4: return "C4";
        case GaloisTag::V4: return "V4";
        case GaloisTag::D4: return "D4";
        case GaloisTag::A4: return "A4";
        case GaloisTag::S4: return "S4";
        default: return "unknown";
    }
}

/// (order N, exponent e) of the named group.
inline std::pair<std::uint64_t, std::uint64_t> group_constants(GaloisTag tag) {
    switch (tag) {
        case GaloisTag::TRIVIAL: return {1, 1};
        case GaloisTag::C2: return {2, 2};
        case GaloisTag::C3: return {3, 3};
        case GaloisTag::S3: return {6, 6};
        case GaloisTag::C4: return {4, 4};
        case GaloisTag::V4: return {4, 2};
        case GaloisTag::D4: return {8, 4};
        case GaloisTag::A4: return {12, 6};
        case GaloisTag::S4: return {24, 12};
        default: throw std::domain_error("group_constants: unknown group");
    }
}

/// Galois group of the splitting field of an irreducible polynomial of
/// degree 2, 3 or 4.  Degree 3 branches on whether the discriminant is a
/// square; degree 4 uses the resolvent cubic
///   R(X) = X^3 - b X^2 + (ac - 4d) X - (a^2 d - 4bd + c^2)
/// for the monicized quartic X^4 + aX^3 + bX^2 + cX + d, with the branch
///   R irreducible:            A4 if disc square, else S4
///   R splits completely:      V4
///   R has one rational root r: C4 when both x^2+ax+(b-r) and x^2-rx+d
///                              split over Q(sqrt(disc)), else D4.
inline GaloisInfo galois_group(const IntPolynomial& f) {
    int deg = f.degree();
    if (deg < 2 || deg > 4) throw std::domain_error("galois_group: degree must be 2, 3 or 4");
    if (!is_irreducible(f)) throw std::domain_error("galois_group: polynomial is reducible");

    auto finish = [](GaloisTag tag, GaloisMethod m) {
        auto [n, e] = group_constants(tag);
        return GaloisInfo{tag, n, e, m};
    };

    if (deg == 2) return finish(GaloisTag::C2, GaloisMethod::discriminant_test);
    if (deg == 3) {
        return finish(is_perfect_square(discriminant(f)) ? GaloisTag::C3 : GaloisTag::S3,
                      GaloisMethod::discriminant_test);
    }

    // monicize: lc^3 f(X/lc) is monic with the same splitting field
    IntPolynomial g = f;
    if (g.lc() < 0) {
        for (auto& x : g.c) x = -x;
    }
    if (g.lc() != 1) {
        // Y = lc*X turns lc*X^4 + ... into a monic quartic in Y: the X^{4-j}
        // coefficient picks up a factor lc^{j-1}.
        const bigint l = g.lc();
        std::vector<bigint> mm(5);
        mm[4] = 1;
        for (int j = 1; j <= 4; ++j) mm[static_cast<std::size_t>(4 - j)] = g.c[static_cast<std::size_t>(4 - j)] * pow_int(l, static_cast<std::uint64_t>(j - 1));
        g = IntPolynomial(std::move(mm));
    }
    const bigint a = g.c[3], b = g.c[2], cc = g.c[1], d = g.c[0];
    IntPolynomial resolvent{-(a * a * d - 4 * b * d + cc * cc), a * cc - 4 * d, -b, 1};
    auto rf = factor_small(resolvent);
    int rational_roots = 0;
    bigint root = 0;
    for (const auto& fac : rf.factors) {
        if (fac.poly.degree() == 1) {
            rational_roots += static_cast<int>(fac.multiplicity);
            // monic resolvent: linear factor is X - r
            root = -fac.poly.c[0] / fac.poly.c[1];
        }
    }
    const bigint disc = discriminant(g);
    if (rational_roots == 0) {
        return finish(is_perfect_square(disc) ? GaloisTag::A4 : GaloisTag::S4,
                      GaloisMethod::resolvent_cubic);
    }
    if (rational_roots == 3) return finish(GaloisTag::V4, GaloisMethod::resolvent_cubic);

    // one rational root: C4 vs D4 via the square test in Q(sqrt(disc))
    auto splits_over_qsqrtd = [&](const bigint& dq) {
        return dq == 0 || is_perfect_square(dq) || is_perfect_square(dq * disc);
    };
    const bigint d1 = a * a - 4 * (b - root);
    const bigint d2 = root * root - 4 * d;
    bool c4 = splits_over_qsqrtd(d1) && splits_over_qsqrtd(d2);
    return finish(c4 ? GaloisTag::C4 : GaloisTag::D4, GaloisMethod::resolvent_cubic);
}

/// k! — the universal fallback exponent: |G| divides k! and e(G) | lcm(1..k) | k!.
inline std::uint64_t fallback_s(unsigned k) {
    if (k < 1) throw std::domain_error("fallback_s: k must be >= 1");
    if (k > 20) throw cost_cap_error("fallback_s: k! exceeds the supported exponent range");
    std::uint64_t r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

// ---------------------------------------------------------------------------
// Dominant-root isolation
// ---------------------------------------------------------------------------

struct RationalInterval {
    bigrat lo, hi;
    bigrat width() const { return hi - lo; }
    double mid_double() const { return static_cast<double>((lo + hi) / 2); }
};

/// Isolate the real root lambda > 1 of a characteristic polynomial with
/// F(1) < 0 by exact rational bisection. Postcondition: F(lo) < 0 < F(hi),
/// lo > 1, hi - lo <= 2^-t.
inline RationalInterval dominant_root(const IntPolynomial& f, unsigned t) {
    if (f.degree() < 1 || f.lc() <= 0) throw hypothesis_violation_error("dominant_root: need positive leading coefficient");
    if (f.eval(bigrat(1)) >= 0) throw hypothesis_violation_error("dominant_root: F(1) >= 0");
    bigrat lo = 1, hi = 2;
    while (f.eval(hi) <= 0) hi *= 2;
    bigrat eps = bigrat(1) / pow_int(bigint(2), t);
    while (hi - lo > eps) {
        bigrat mid = (lo + hi) / 2;
        bigrat v = f.eval(mid);
        if (v < 0) {
            lo = mid;
        } else if (v > 0) {
            hi = mid;
        } else {
            // exact rational root: shrink a symmetric window until signs straddle
            bigrat h = eps / 2;
            while (!(f.eval(mid - h) < 0 && f.eval(mid + h) > 0)) h /= 2;
            return {mid - h, mid + h};
        }
    }
    return {lo, hi};
}

}  // namespace realizable::polyalg
