#pragma once

/*
 * Pellian fractions of a real quadratic integer xi (xi^2 = t xi + u,
 * t > 0): fractions p/q with q > 0, p/q > t/2 and p^2 - t p q - u q^2 = +-1.
 *
 * They are read off the reference expansion of xi - ceil(conj xi), which
 * is purely periodic, at every multiple of the period length, then
 * shifted back. p_1 - q_1 conj(xi) is the fundamental unit of Z[xi].
 *
 * orbit_pell_coverage() compares that list against the orbit of f_xi
 * and classifies the exceptional surds s(3+sqrt5)/2, s(5+sqrt5)/2 and
 * s(2+sqrt2), where the orbit only reaches even powers of the unit.
 */

#include "cf.hpp"
#include "integer.hpp"
#include "pattern.hpp"
#include "quad_surd.hpp"
#include "rational.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lftcf {

class QuadInteger {
public:
    QuadInteger(Integer t, Integer u) : t_(std::move(t)), u_(std::move(u))
    {
        const Integer disc = discriminant();
        if (disc <= 0 || is_perfect_square(disc))
            throw std::invalid_argument("xi^2 - " + t_.get_str() + " xi - (" + u_.get_str() +
                                        ") = 0 needs a positive nonsquare discriminant");
        if (t_ <= 0)
            throw std::invalid_argument("xi must exceed |conj(xi)|, i.e. t > 0 (got t = " + t_.get_str() + ")");
    }

    const Integer& t() const { return t_; }
    const Integer& u() const { return u_; }
    Integer discriminant() const { return t_ * t_ + 4 * u_; }

    QuadSurd xi() const { return QuadSurd(t_, 1, 2, discriminant()); }
    QuadSurd conjugate() const { return QuadSurd(t_, -1, 2, discriminant()); }

    /// p^2 - t p q - u q^2.
    Integer form(const Integer& p, const Integer& q) const { return p * p - t_ * p * q - u_ * q * q; }

    friend bool operator==(const QuadInteger&, const QuadInteger&) = default;

private:
    Integer t_, u_;
};

inline bool is_pellian(const Integer& p, const Integer& q, const QuadInteger& xi)
{
    if (q <= 0 || 2 * p <= xi.t() * q)
        return false;
    return abs_value(xi.form(p, q)) == 1;
}

struct PellianFraction {
    Integer p, q;
    int norm_sign = 0; // sign of p^2 - t p q - u q^2
    Rational value() const { return Rational(p, q); }
};

enum class ExceptionKind { none, golden, pell_number };

inline const char* exception_name(ExceptionKind k)
{
    switch (k) {
    case ExceptionKind::none:
        return "none";
    case ExceptionKind::golden:
        return "golden";
    case ExceptionKind::pell_number:
        return "pell_number";
    }
    return "?";
}

struct PellReport {
    Integer t, u;
    std::size_t period_L = 0;
    /// ceil(conj xi); xi - shift is purely periodic.
    Integer shift;
    std::vector<PellianFraction> pellians;
    /// p_1 - q_1 conj(xi).
    Integer unit_p, unit_q;
    std::optional<QuadSurd> fundamental_unit;

    // Filled by orbit_pell_coverage.
    bool has_orbit = false;
    /// (pellian position, orbit step n), 1-based positions into pellians.
    std::vector<std::pair<std::size_t, std::size_t>> orbit_hits;
    ExceptionKind exception = ExceptionKind::none;
    Integer exception_s;
    bool covers_all = false;
    bool predicted_covers_all = false;
};

struct PellianLimits {
    /// Stop once q exceeds this, ...
    Integer height = Integer("1000000000000");
    /// ... but always return at least this many ...
    std::size_t min_count = 4;
    /// ... and never more than this many.
    std::size_t max_count = 64;
};

namespace detail {

inline PellReport enumerate_pellians(const QuadInteger& xi, const PellianLimits& lim)
{
    PellReport rep;
    rep.t = xi.t();
    rep.u = xi.u();
    const QuadSurd conj = xi.conjugate();
    rep.shift = conj.ceil();
    const Cf cf = cf_expand_surd(xi.xi() - Rational(rep.shift));
    if (!cf.head.empty())
        throw std::logic_error("pellian enumeration: shifted surd is not purely periodic");
    rep.period_L = cf.period.size();

    ConvergentStream s;
    std::size_t idx = 0;
    while (rep.pellians.size() < lim.max_count) {
        for (std::size_t i = 0; i < rep.period_L; ++i)
            s.push(cf.term(idx++));
        PellianFraction f{s.p() + rep.shift * s.q(), s.q(), 0};
        if (rep.pellians.size() >= lim.min_count && f.q > lim.height)
            break;
        if (!is_pellian(f.p, f.q, xi))
            throw std::logic_error("pellian enumeration: " + f.value().str() + " fails the Pellian conditions");
        f.norm_sign = sign(xi.form(f.p, f.q));
        rep.pellians.push_back(std::move(f));
    }
    if (rep.pellians.empty())
        throw std::logic_error("pellian enumeration: limits admit no fractions");

    rep.unit_p = rep.pellians.front().p;
    rep.unit_q = rep.pellians.front().q;
    const QuadSurd unit = QuadSurd::from_rational(Rational(rep.unit_p), conj.k()) - conj * Rational(rep.unit_q);
    rep.fundamental_unit = unit;
    QuadSurd power = unit;
    for (std::size_t n = 0; n < rep.pellians.size(); ++n) {
        const PellianFraction& f = rep.pellians[n];
        const QuadSurd elem = QuadSurd::from_rational(Rational(f.p), conj.k()) - conj * Rational(f.q);
        if (elem != power)
            throw std::logic_error("pellian enumeration: unit-power law fails at n = " + std::to_string(n + 1));
        power = power * unit;
    }
    return rep;
}

} // namespace detail

/// First count Pellian fractions of xi with period data and fundamental unit.
inline PellReport pellian_fractions(const QuadInteger& xi, std::size_t count)
{
    if (count < 1)
        throw std::invalid_argument("pellian_fractions: count must be at least 1");
    PellianLimits lim;
    lim.min_count = count;
    lim.max_count = count;
    return detail::enumerate_pellians(xi, lim);
}

/// Pellian fractions with q <= height (at least min_count, at most max_count).
inline PellReport pellian_fractions(const QuadInteger& xi, const PellianLimits& lim)
{
    return detail::enumerate_pellians(xi, lim);
}

/// s divides some F_{2n+1} (fibonacci) or G_{2n+1} (pell) of odd index.
inline bool exceptional_divisor(const Integer& s, ExceptionKind kind)
{
    if (s < 1)
        throw std::invalid_argument("exceptional_divisor: s must be positive");
    if (kind == ExceptionKind::none)
        throw std::invalid_argument("exceptional_divisor: kind must be golden (Fibonacci) or pell_number");
    const Integer c = (kind == ExceptionKind::golden) ? 1 : 2;
    if (s == 1)
        return true;
    // (x_n, x_{n+1}) mod s, starting at (x_1, x_2) = (1, c)
    Integer x = 1, y = c;
    const Integer bound = 6 * s * s;
    for (Integer n = 1; n <= bound; ++n) {
        if (n % 2 == 1 && x == 0)
            return true;
        if (x == 0 && y == 1)
            return false; // back to (x_0, x_1): one full period scanned
        Integer z = mod_floor(c * y + x, s);
        x = std::move(y);
        y = std::move(z);
    }
    throw std::logic_error("exceptional_divisor: no period within 6 s^2 for s = " + s.get_str());
}

inline bool exceptional_divisor(long s, ExceptionKind kind) { return exceptional_divisor(Integer(s), kind); }

/// Exceptional shape of xi/s, decided on (t/s, u/s^2) = (v m, eps v).
inline ExceptionKind exceptional_shape(const PatternParams& p)
{
    const Integer a = p.v() * p.m();
    const Integer b = p.eps() * p.v();
    if ((a == 3 && b == -1) || (a == 5 && b == -5))
        return ExceptionKind::golden;
    if (a == 4 && b == -2)
        return ExceptionKind::pell_number;
    return ExceptionKind::none;
}

/*
 * Pellian fractions of xi = d + sqrt(k) against the orbit f_xi^n(inf).
 * covers_all is the empirical verdict over the enumerated fractions;
 * predicted_covers_all is false exactly for the exceptional shapes whose
 * s divides an odd-index Fibonacci / Pell number.
 */
inline PellReport orbit_pell_coverage(const PatternParams& p, const PellianLimits& lim = {})
{
    const QuadInteger xi(p.t(), p.u());
    PellReport rep = pellian_fractions(xi, lim);
    rep.has_orbit = true;

    Integer qmax = 0;
    for (const PellianFraction& f : rep.pellians)
        if (f.q > qmax)
            qmax = f.q;

    // Orbit values f_xi^n(inf) = s v_{n+1} a_{n+1} / a_n; the reduced denominator is >= a_n / (s v).
    std::vector<std::pair<Rational, std::size_t>> orbit;
    Integer prev = 0, cur = 1;
    for (std::size_t n = 1;; ++n) {
        Integer next = p.v_at(n) * p.m() * cur + p.eps() * prev;
        const Rational value(p.s() * p.v_at(n + 1) * next, cur);
        orbit.emplace_back(value, n);
        if (cur > qmax * p.s() * p.v())
            break;
        prev = std::move(cur);
        cur = std::move(next);
    }

    for (std::size_t i = 0; i < rep.pellians.size(); ++i) {
        const Rational target = rep.pellians[i].value();
        for (const auto& [value, n] : orbit)
            if (value == target) {
                rep.orbit_hits.emplace_back(i + 1, n);
                break;
            }
    }
    rep.covers_all = rep.orbit_hits.size() == rep.pellians.size();

    const ExceptionKind shape = exceptional_shape(p);
    if (shape != ExceptionKind::none && exceptional_divisor(p.s(), shape)) {
        rep.exception = shape;
        rep.exception_s = p.s();
    }
    rep.predicted_covers_all = rep.exception == ExceptionKind::none;
    return rep;
}

enum class NegativePellVerdict { unsolvable, undetermined };

inline const char* verdict_name(NegativePellVerdict v)
{
    return v == NegativePellVerdict::unsolvable ? "unsolvable" : "undetermined";
}

/// x^2 - k y^2 = -1 has no solution when 4d^2/(k - d^2) is a negative integer, outside the exceptional (k, d).
inline NegativePellVerdict negative_pell_verdict(const Integer& k, const Integer& d)
{
    if (k <= 0 || is_perfect_square(k))
        throw std::invalid_argument("k = " + k.get_str() + " must be a positive nonsquare integer");
    if (d <= 0)
        throw std::invalid_argument("d must be positive");
    const Integer diff = k - d * d;
    if (diff >= 0 || (4 * d * d) % diff != 0)
        throw std::invalid_argument("negative_pell_verdict: 4d^2/(k-d^2) = " + Rational(4 * d * d, diff).str() +
                                    " is not a negative integer");
    // k = 5 s^2, d in {3s, 5s}, 2s | F_{2n+1}
    if (k % 5 == 0 && is_perfect_square(k / 5)) {
        const Integer s = isqrt(k / 5);
        if ((d == 3 * s || d == 5 * s) && exceptional_divisor(2 * s, ExceptionKind::golden))
            return NegativePellVerdict::undetermined;
    }
    // k = 2 s^2, d = 2s, s | G_{2n+1}
    if (k % 2 == 0 && is_perfect_square(k / 2)) {
        const Integer s = isqrt(k / 2);
        if (d == 2 * s && exceptional_divisor(s, ExceptionKind::pell_number))
            return NegativePellVerdict::undetermined;
    }
    return NegativePellVerdict::unsolvable;
}

/// Reference: x^2 - k y^2 = -1 is solvable iff the period of sqrt(k) is odd.
inline bool negative_pell_solvable(const Integer& k)
{
    return cf_expand_surd(QuadSurd::sqrt_of(k)).period.size() % 2 == 1;
}

} // namespace lftcf
