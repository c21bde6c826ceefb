#pragma once

/*
 * Linear fractional transformations x -> (m11 x + m12) / (m21 x + m22)
 * with integer entries, acting on the projective line over Q and on
 * real quadratic surds.
 *
 * An Lft keeps the entries it was built with; products and powers come
 * back in primitive form (content 1, first nonzero of m11, m12, m21, m22
 * positive). Equality is projective: two Lfts are equal iff their
 * primitive forms agree.
 */

#include "integer.hpp"
#include "quad_surd.hpp"
#include "rational.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace lftcf {

class Lft {
public:
    Lft(Integer m11, Integer m12, Integer m21, Integer m22)
        : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)), m22_(std::move(m22))
    {
        if (det() == 0)
            throw std::invalid_argument("Lft: degenerate matrix");
    }

    /// Clears denominators of a rational matrix; the map is unchanged.
    static Lft from_rationals(const Rational& m11, const Rational& m12, const Rational& m21, const Rational& m22)
    {
        for (const Rational* r : {&m11, &m12, &m21, &m22})
            if (r->is_infinite())
                throw std::invalid_argument("Lft: infinite entry");
        const Integer l = lcm(lcm(m11.den(), m12.den()), lcm(m21.den(), m22.den()));
        auto scaled = [&](const Rational& r) { return Integer(r.num() * (l / r.den())); };
        return Lft(scaled(m11), scaled(m12), scaled(m21), scaled(m22)).primitive();
    }

    static Lft identity() { return Lft(1, 0, 0, 1); }

    const Integer& m11() const { return m11_; }
    const Integer& m12() const { return m12_; }
    const Integer& m21() const { return m21_; }
    const Integer& m22() const { return m22_; }

    Integer det() const { return m11_ * m22_ - m12_ * m21_; }
    Integer trace() const { return m11_ + m22_; }

    Integer content() const { return gcd(gcd(m11_, m12_), gcd(m21_, m22_)); }

    Lft primitive() const
    {
        Integer g = content();
        const Integer* lead = !is_zero(m11_) ? &m11_ : !is_zero(m12_) ? &m12_ : &m21_;
        if (*lead < 0)
            g = -g;
        return Lft(m11_ / g, m12_ / g, m21_ / g, m22_ / g, Raw{});
    }

    /// Adjugate; represents the inverse map.
    Lft inverse() const { return Lft(m22_, -m12_, -m21_, m11_, Raw{}).primitive(); }

    Rational apply(const Rational& x) const
    {
        if (x.is_infinite())
            return Rational(m11_, m21_);
        const Integer n = m11_ * x.num() + m12_ * x.den();
        const Integer d = m21_ * x.num() + m22_ * x.den();
        return Rational(n, d);
    }

    /// Irrational x never hits the pole; a rational surd is mapped as a rational.
    QuadSurd apply(const QuadSurd& x) const
    {
        if (x.is_rational()) {
            const Rational r = apply(x.rational_value());
            if (r.is_infinite())
                throw std::domain_error("Lft: rational surd mapped to infinity");
            return QuadSurd::from_rational(r, x.k());
        }
        const QuadSurd n = x * Rational(m11_) + Rational(m12_);
        const QuadSurd d = x * Rational(m21_) + Rational(m22_);
        return n / d;
    }

    /// Matrix product: (g * h)(x) = g(h(x)).
    friend Lft operator*(const Lft& g, const Lft& h)
    {
        return Lft(g.m11_ * h.m11_ + g.m12_ * h.m21_, g.m11_ * h.m12_ + g.m12_ * h.m22_,
                   g.m21_ * h.m11_ + g.m22_ * h.m21_, g.m21_ * h.m12_ + g.m22_ * h.m22_, Raw{})
            .primitive();
    }

    friend bool operator==(const Lft& g, const Lft& h)
    {
        const Lft a = g.primitive();
        const Lft b = h.primitive();
        return a.m11_ == b.m11_ && a.m12_ == b.m12_ && a.m21_ == b.m21_ && a.m22_ == b.m22_;
    }

    std::string str() const
    {
        return "[[" + m11_.get_str() + ", " + m12_.get_str() + "], [" + m21_.get_str() + ", " + m22_.get_str() + "]]";
    }

    friend std::ostream& operator<<(std::ostream& os, const Lft& g) { return os << g.str(); }

private:
    struct Raw {};
    Lft(Integer m11, Integer m12, Integer m21, Integer m22, Raw)
        : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)), m22_(std::move(m22))
    {
    }

    static bool is_zero(const Integer& x) { return x == 0; }

    Integer m11_;
    Integer m12_;
    Integer m21_;
    Integer m22_;
};

inline Lft lft_compose(const Lft& g, const Lft& h) { return g * h; }

inline Lft lft_pow(const Lft& g, unsigned long n)
{
    Lft result = Lft::identity();
    Lft base = g.primitive();
    while (n > 0) {
        if (n & 1UL)
            result = result * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return result;
}

inline Rational lft_apply(const Lft& g, const Rational& x) { return g.apply(x); }
inline QuadSurd lft_apply(const Lft& g, const QuadSurd& x) { return g.apply(x); }

/// x -> (d x + k) / (x + d) for rational d = p/q, scaled to (p x + k q) / (q x + p).
inline Lft orbit_map(const Integer& k, const Rational& d)
{
    return Lft(d.num(), k * d.den(), d.den(), d.num()).primitive();
}

} // namespace lftcf
