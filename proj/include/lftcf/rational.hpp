#pragma once

/*
 * Exact rationals on the projective line.
 *
 * A Rational is num/den in lowest terms with den > 0, or the single
 * point at infinity (stored as 1/0). Orbits start at infinity, so it is
 * an ordinary value here:
 *
 *     1/inf = 0,  1/0 = inf,  inf + x = inf (x finite),  a * inf = inf (a != 0)
 *
 * inf - inf, 0 * inf and ordering against inf are undefined and throw.
 */

#include "integer.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lftcf {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(const Integer& n) : num_(n), den_(1) {}            // NOLINT(google-explicit-constructor)
    Rational(long n) : num_(n), den_(1) {}                      // NOLINT(google-explicit-constructor)
    Rational(int n) : num_(n), den_(1) {}                       // NOLINT(google-explicit-constructor)

    /// n/d reduced; d = 0 (with n != 0) gives infinity.
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { canonicalize(); }

    static Rational infinity()
    {
        Rational r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_infinite() const { return den_ == 0; }
    bool is_finite() const { return den_ != 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0 && den_ != 0; }

    int signum() const
    {
        require_finite("sign");
        return sign(num_);
    }

    Integer floor() const
    {
        require_finite("floor");
        return floor_div(num_, den_);
    }

    Integer ceil() const
    {
        require_finite("ceil");
        return ceil_div(num_, den_);
    }

    Rational reciprocal() const
    {
        if (is_infinite())
            return Rational();
        if (num_ == 0)
            return infinity();
        return Rational(den_, num_);
    }

    Rational abs() const { return is_infinite() ? *this : Rational(abs_value(num_), den_); }

    Rational operator-() const { return is_infinite() ? *this : Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        if (a.is_infinite() || b.is_infinite()) {
            if (a.is_infinite() && b.is_infinite())
                throw std::domain_error("Rational: inf + inf is undefined");
            return infinity();
        }
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b)
    {
        if (a.is_infinite() || b.is_infinite()) {
            if (a.is_zero() || b.is_zero())
                throw std::domain_error("Rational: 0 * inf is undefined");
            return infinity();
        }
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (a.is_infinite() && b.is_infinite())
            throw std::domain_error("Rational: inf / inf is undefined");
        if (a.is_zero() && b.is_zero())
            throw std::domain_error("Rational: 0 / 0 is undefined");
        return a * b.reciprocal();
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        a.require_finite("compare");
        b.require_finite("compare");
        const Integer lhs = a.num_ * b.den_;
        const Integer rhs = b.num_ * a.den_;
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "p/q", "p" for integers, "inf" for infinity.
    std::string str() const
    {
        if (is_infinite())
            return "inf";
        if (den_ == 1)
            return num_.get_str();
        return num_.get_str() + "/" + den_.get_str();
    }

    /// Inverse of str(); also accepts "P/Q" with unreduced or negative Q.
    static Rational parse(const std::string& text)
    {
        if (text == "inf" || text == "oo")
            return infinity();
        const auto slash = text.find('/');
        if (slash == std::string::npos)
            return Rational(parse_integer(text));
        const Integer n = parse_integer(text.substr(0, slash));
        const Integer d = parse_integer(text.substr(slash + 1));
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(n, d);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void canonicalize()
    {
        if (den_ == 0) {
            if (num_ == 0)
                throw std::domain_error("Rational: 0/0");
            num_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const Integer g = gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    void require_finite(const char* what) const
    {
        if (is_infinite())
            throw std::domain_error(std::string("Rational: ") + what + " of infinity");
    }

    Integer num_;
    Integer den_;
};

} // namespace lftcf
