#pragma once

/*
 * Arbitrary-precision integer kernel.
 *
 * Integer is GMP's mpz_class. The helpers below fix the rounding
 * conventions used everywhere else: floor division, nonnegative
 * residues, and exact integer square roots.
 */

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lftcf {

using Integer = mpz_class;

inline int sign(const Integer& a) { return sgn(a); }

inline Integer abs_value(const Integer& a) { return abs(a); }

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// floor(a / b), b != 0.
inline Integer floor_div(const Integer& a, const Integer& b)
{
    if (b == 0)
        throw std::domain_error("floor_div: division by zero");
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// ceil(a / b), b != 0.
inline Integer ceil_div(const Integer& a, const Integer& b)
{
    if (b == 0)
        throw std::domain_error("ceil_div: division by zero");
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Residue of a modulo m in [0, m), m > 0.
inline Integer mod_floor(const Integer& a, const Integer& m)
{
    if (m <= 0)
        throw std::domain_error("mod_floor: modulus must be positive");
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Inverse of a modulo m in [0, m); requires gcd(a, m) = 1. m = 1 gives 0.
inline Integer mod_inverse(const Integer& a, const Integer& m)
{
    if (m <= 0)
        throw std::domain_error("mod_inverse: modulus must be positive");
    if (m == 1)
        return 0;
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: " + a.get_str() + " is not invertible mod " + m.get_str());
    return r;
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n)
{
    if (n < 0)
        throw std::domain_error("isqrt: negative argument");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer pow_int(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool fits_long(const Integer& a) { return a.fits_slong_p(); }

inline std::int64_t to_int64(const Integer& a)
{
    if (!a.fits_slong_p())
        throw std::overflow_error("integer " + a.get_str() + " does not fit in 64 bits");
    return a.get_si();
}

/// Parses a base-10 integer with optional leading sign; throws on junk.
inline Integer parse_integer(const std::string& text)
{
    std::string s = text;
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    if (s.empty() || s == "-")
        throw std::invalid_argument("not an integer: '" + text + "'");
    for (std::size_t i = (s.front() == '-') ? 1 : 0; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("not an integer: '" + text + "'");
    return Integer(s, 10);
}

} // namespace lftcf
