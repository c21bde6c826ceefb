#pragma once

/*
 * Real quadratic surds (a + b*sqrt(k)) / c.
 *
 * Canonical form: c > 0, gcd(a, b, c) = 1, k > 0 not a perfect square.
 * Every surd carries its radicand; binary operations require equal k.
 * Signs and comparisons are decided exactly by comparing a^2 with b^2 k.
 */

#include "integer.hpp"
#include "rational.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lftcf {

class QuadSurd {
public:
    /// (a + b sqrt(k)) / c. Throws if c == 0 or k is not a positive nonsquare.
    QuadSurd(Integer a, Integer b, Integer c, Integer k)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), k_(std::move(k))
    {
        if (k_ <= 0 || is_perfect_square(k_))
            throw std::invalid_argument("QuadSurd: radicand " + k_.get_str() + " is not a positive nonsquare");
        canonicalize();
    }

    /// The rational r viewed in Q(sqrt(k)).
    static QuadSurd from_rational(const Rational& r, const Integer& k)
    {
        if (r.is_infinite())
            throw std::domain_error("QuadSurd: infinity is not a surd");
        return QuadSurd(r.num(), 0, r.den(), k);
    }

    /// sqrt(k).
    static QuadSurd sqrt_of(const Integer& k) { return QuadSurd(0, 1, 1, k); }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    const Integer& k() const { return k_; }

    bool is_rational() const { return b_ == 0; }

    Rational rational_value() const
    {
        if (!is_rational())
            throw std::domain_error("QuadSurd: value is irrational");
        return Rational(a_, c_);
    }

    /// a/c, the rational part.
    Rational rational_part() const { return Rational(a_, c_); }
    /// b/c, the coefficient of sqrt(k).
    Rational surd_part() const { return Rational(b_, c_); }

    QuadSurd conjugate() const { return QuadSurd(a_, -b_, c_, k_, Raw{}); }

    /// (a^2 - b^2 k) / c^2.
    Rational norm() const { return Rational(a_ * a_ - b_ * b_ * k_, c_ * c_); }

    /// 2a / c.
    Rational trace() const { return Rational(2 * a_, c_); }

    int signum() const { return numerator_sign(a_, b_, k_); }

    QuadSurd operator-() const { return QuadSurd(-a_, -b_, c_, k_, Raw{}); }

    friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y)
    {
        same_field(x, y);
        return QuadSurd(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, x.k_);
    }

    friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }

    friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y)
    {
        same_field(x, y);
        return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * x.k_, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_, x.k_);
    }

    QuadSurd reciprocal() const
    {
        // c / (a + b sqrt k) = c (a - b sqrt k) / (a^2 - b^2 k)
        const Integer n = a_ * a_ - b_ * b_ * k_;
        if (n == 0)
            throw std::domain_error("QuadSurd: reciprocal of zero");
        return QuadSurd(c_ * a_, -c_ * b_, n, k_);
    }

    friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) { return x * y.reciprocal(); }

    friend QuadSurd operator+(const QuadSurd& x, const Rational& r) { return x + from_rational(r, x.k_); }
    friend QuadSurd operator+(const Rational& r, const QuadSurd& x) { return x + r; }
    friend QuadSurd operator-(const QuadSurd& x, const Rational& r) { return x + (-r); }
    friend QuadSurd operator-(const Rational& r, const QuadSurd& x) { return (-x) + r; }
    friend QuadSurd operator*(const QuadSurd& x, const Rational& r) { return x * from_rational(r, x.k_); }
    friend QuadSurd operator*(const Rational& r, const QuadSurd& x) { return x * r; }
    friend QuadSurd operator/(const QuadSurd& x, const Rational& r) { return x * r.reciprocal(); }
    friend QuadSurd operator/(const Rational& r, const QuadSurd& x) { return x.reciprocal() * r; }

    /// Integer power by repeated squaring.
    QuadSurd pow(unsigned long n) const
    {
        QuadSurd result(1, 0, 1, k_, Raw{});
        QuadSurd base = *this;
        while (n > 0) {
            if (n & 1UL)
                result = result * base;
            n >>= 1;
            if (n > 0)
                base = base * base;
        }
        return result;
    }

    /// floor of the real value, exact.
    Integer floor() const
    {
        if (b_ == 0)
            return floor_div(a_, c_);
        // b sqrt(k) = sign(b) sqrt(b^2 k), and b^2 k is never a square here.
        const Integer r = isqrt(b_ * b_ * k_);
        const Integer lower = (b_ > 0) ? Integer(a_ + r) : Integer(a_ - r - 1);
        return floor_div(lower, c_);
    }

    Integer ceil() const
    {
        if (b_ == 0)
            return ceil_div(a_, c_);
        return floor() + 1;
    }

    /// Same number written over a different radicand; requires k * new_k to be a square.
    QuadSurd rebase(const Integer& new_k) const
    {
        if (new_k == k_)
            return *this;
        const Integer prod = k_ * new_k;
        if (!is_perfect_square(prod))
            throw std::invalid_argument("QuadSurd: sqrt(" + k_.get_str() + ") is not a rational multiple of sqrt(" +
                                        new_k.get_str() + ")");
        // sqrt(k) = sqrt(k new_k) / new_k * sqrt(new_k)
        const Integer w = isqrt(prod);
        return QuadSurd(a_ * new_k, b_ * w, c_ * new_k, new_k);
    }

    /// Value equality; radicands may differ by a square factor (sqrt(8) == 2 sqrt(2)).
    friend bool operator==(const QuadSurd& x, const QuadSurd& y)
    {
        if (x.k_ == y.k_)
            return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
        return x.a_ * y.c_ == y.a_ * x.c_ && sign(x.b_) == sign(y.b_) &&
               x.b_ * x.b_ * x.k_ * y.c_ * y.c_ == y.b_ * y.b_ * y.k_ * x.c_ * x.c_;
    }

    friend std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y)
    {
        return to_ordering((x - y).signum());
    }

    friend bool operator==(const QuadSurd& x, const Rational& r)
    {
        return r.is_finite() && x.b_ == 0 && Rational(x.a_, x.c_) == r;
    }

    friend std::strong_ordering operator<=>(const QuadSurd& x, const Rational& r)
    {
        return to_ordering((x - r).signum());
    }

    /// "(a + b*sqrt(k))/c" with trivial parts elided.
    std::string str() const
    {
        std::string s;
        if (b_ == 0) {
            s = a_.get_str();
        } else {
            const Integer ab = abs_value(b_);
            const std::string root = (ab == 1 ? std::string() : ab.get_str() + "*") + "sqrt(" + k_.get_str() + ")";
            if (a_ == 0)
                s = (b_ < 0 ? "-" : "") + root;
            else
                s = a_.get_str() + (b_ < 0 ? " - " : " + ") + root;
        }
        if (c_ == 1)
            return s;
        return "(" + s + ")/" + c_.get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadSurd& x) { return os << x.str(); }

private:
    struct Raw {};
    QuadSurd(Integer a, Integer b, Integer c, Integer k, Raw)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), k_(std::move(k))
    {
    }

    static void same_field(const QuadSurd& x, const QuadSurd& y)
    {
        if (x.k_ != y.k_)
            throw std::invalid_argument("QuadSurd: mixed radicands " + x.k_.get_str() + " and " + y.k_.get_str());
    }

    static int numerator_sign(const Integer& a, const Integer& b, const Integer& k)
    {
        const int sa = sign(a);
        const int sb = sign(b);
        if (sb == 0)
            return sa;
        if (sa == 0 || sa == sb)
            return sb;
        return (a * a > b * b * k) ? sa : sb;
    }

    static std::strong_ordering to_ordering(int s)
    {
        if (s < 0)
            return std::strong_ordering::less;
        if (s > 0)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    void canonicalize()
    {
        if (c_ == 0)
            throw std::domain_error("QuadSurd: zero denominator");
        if (c_ < 0) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
        }
        const Integer g = gcd(gcd(a_, b_), c_);
        if (g != 1) {
            a_ /= g;
            b_ /= g;
            c_ /= g;
        }
    }

    Integer a_;
    Integer b_;
    Integer c_;
    Integer k_;
};

} // namespace lftcf
