#pragma once

/*
 * Orbits of f(x) = (d x + k) / (x + d) started at infinity.
 *
 * f^n(inf) = a/b where (d + sqrt k)^n = a + b sqrt k, so iterates are
 * computed by pair exponentiation in Z[sqrt k] after clearing the
 * denominator of d. Iterates are classified against the reference
 * expansion of sqrt k (cf_expand_surd), never against pattern output.
 */

#include "cf.hpp"
#include "integer.hpp"
#include "lft.hpp"
#include "quad_surd.hpp"
#include "rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lftcf {

class OrbitSpec {
public:
    OrbitSpec(Integer k, Rational d) : k_(std::move(k)), d_(std::move(d))
    {
        if (k_ <= 0 || is_perfect_square(k_))
            throw std::invalid_argument("k = " + k_.get_str() + " must be a positive nonsquare integer");
        if (d_.is_infinite() || d_ <= Rational(0))
            throw std::invalid_argument("d = " + d_.str() + " must be a positive rational");
        r_ = Rational(4) * d_ * d_ / (Rational(k_) - d_ * d_);
    }

    const Integer& k() const { return k_; }
    const Rational& d() const { return d_; }
    /// 4 d^2 / (k - d^2).
    const Rational& R() const { return r_; }

    Lft map() const { return orbit_map(k_, d_); }

private:
    Integer k_;
    Rational d_;
    Rational r_;
};

struct IterateRecord {
    std::size_t n = 0;
    Rational value;
    Integer pell_error; // p^2 - k q^2 with value = p/q in lowest terms
    std::optional<std::size_t> convergent_index;
    std::optional<SemiconvergentHit> semiconvergent;
    bool pellian = false;
};

struct SeedVerdict {
    Rational R;
    bool integral = false;
};

/// (a + b sqrt k) as an integer pair, multiplied in Z[sqrt k].
struct SurdPair {
    Integer a, b;

    static SurdPair mul(const SurdPair& x, const SurdPair& y, const Integer& k)
    {
        return {x.a * y.a + k * x.b * y.b, x.a * y.b + x.b * y.a};
    }
};

inline SurdPair surd_pair_pow(SurdPair base, unsigned long n, const Integer& k)
{
    SurdPair result{1, 0};
    while (n > 0) {
        if (n & 1UL)
            result = SurdPair::mul(result, base, k);
        n >>= 1;
        if (n > 0)
            base = SurdPair::mul(base, base, k);
    }
    return result;
}

/// f^n(inf) for the orbit map; n = 0 gives infinity.
inline Rational iterate(const OrbitSpec& spec, unsigned long n)
{
    // d + sqrt k = (p + q sqrt k)/q; the common scalar cancels in a/b.
    const SurdPair gen{spec.d().num(), spec.d().den()};
    const SurdPair r = surd_pair_pow(gen, n, spec.k());
    return Rational(r.a, r.b);
}

/// f^1(inf), ..., f^count(inf) by repeated multiplication.
inline std::vector<Rational> orbit_values(const OrbitSpec& spec, std::size_t count)
{
    std::vector<Rational> out;
    out.reserve(count);
    const SurdPair gen{spec.d().num(), spec.d().den()};
    SurdPair cur{1, 0};
    for (std::size_t n = 1; n <= count; ++n) {
        cur = SurdPair::mul(cur, gen, spec.k());
        const Integer g = gcd(cur.a, cur.b);
        cur.a /= g;
        cur.b /= g;
        out.emplace_back(cur.a, cur.b);
    }
    return out;
}

/// Newton/Babylonian step (x + k/x) / 2.
inline Rational babylonian_step(const Integer& k, const Rational& x)
{
    if (x.is_infinite() || x.is_zero())
        throw std::invalid_argument("babylonian_step: x must be finite and nonzero");
    return (x + Rational(k) / x) / Rational(2);
}

inline SeedVerdict is_seed(const OrbitSpec& spec) { return {spec.R(), spec.R().is_integer()}; }

/// (d + sqrt k)^2 / (k - d^2), a root of z^2 - (R+2) z + 1; a unit whenever R is an integer.
inline QuadSurd zeta(const OrbitSpec& spec)
{
    const QuadSurd xi = QuadSurd::sqrt_of(spec.k()) + spec.d();
    return (xi * xi) / (Rational(spec.k()) - spec.d() * spec.d());
}

/// The integer nearest to sqrt(k) (never a tie for nonsquare k).
inline Integer nearest_integer_to_sqrt(const Integer& k)
{
    const Integer r = isqrt(k);
    return (4 * k > (2 * r + 1) * (2 * r + 1)) ? Integer(r + 1) : r;
}

inline Integer pell_error(const Rational& x, const Integer& k)
{
    return x.num() * x.num() - k * x.den() * x.den();
}

struct IntegralPowerOptions {
    /// Hard ceiling on the residue-recurrence period search.
    unsigned long max_period = 10'000'000;
};

/*
 * Smallest n >= 1 such that g^n is projectively an integer matrix of
 * determinant +-1. Requires trace(g)^2 / det(g) in Z.
 *
 * With M the primitive integer form of g, A = M^2 / det M has determinant 1
 * and integral trace T = tr(M)^2/det(M) - 2, and x(n) = |det M| A^n
 * satisfies x(n+1) = T x(n) - x(n-1) over the integers. Mod |det M| that
 * recurrence is purely periodic; at its period l we have x(l) = 0, so
 * A^l is integral and M^(2l) qualifies. The answer is searched in [1, 2l].
 */
inline unsigned long min_integral_power(const Lft& g, const IntegralPowerOptions& opts = {})
{
    const Lft M = g.primitive();
    const Integer t = M.trace();
    const Integer delta = M.det();
    const Integer t2 = t * t;
    if (t2 % delta != 0)
        throw std::invalid_argument("min_integral_power: trace^2/det = " + Rational(t2, delta).str() +
                                    " is not an integer, so no power is integral");
    const Integer mod = abs_value(delta);
    if (mod == 1)
        return 1;

    const Integer T = t2 / delta - 2;
    const int sd = sign(delta);
    // x(1) = |det| M^2 / det = sign(det) M^2
    const Integer s11 = M.m11() * M.m11() + M.m12() * M.m21();
    const Integer s12 = M.m11() * M.m12() + M.m12() * M.m22();
    const Integer s21 = M.m21() * M.m11() + M.m22() * M.m21();
    const Integer s22 = M.m21() * M.m12() + M.m22() * M.m22();
    const std::vector<Integer> x1 = {mod_floor(sd * s11, mod), mod_floor(sd * s12, mod), mod_floor(sd * s21, mod),
                                     mod_floor(sd * s22, mod)};
    std::vector<Integer> prev(4, Integer(0)); // x(0) = |det| I = 0 mod |det|
    std::vector<Integer> cur = x1;
    unsigned long period = 0;
    for (unsigned long n = 1; n <= opts.max_period; ++n) {
        std::vector<Integer> next(4);
        for (int i = 0; i < 4; ++i)
            next[i] = mod_floor(T * cur[i] - prev[i], mod);
        prev = std::move(cur);
        cur = std::move(next);
        // state (x(n), x(n+1)) back to (x(0), x(1))?
        bool back = true;
        for (int i = 0; i < 4 && back; ++i)
            back = prev[i] == 0 && cur[i] == x1[i];
        if (back) {
            period = n;
            break;
        }
    }
    if (period == 0)
        throw std::runtime_error("min_integral_power: residue period exceeds ceiling " +
                                 std::to_string(opts.max_period) + " for " + M.str());

    Lft power = Lft::identity();
    for (unsigned long n = 1; n <= 2 * period; ++n) {
        power = power * M;
        if (abs_value(power.det()) == 1)
            return n;
    }
    throw std::logic_error("min_integral_power: no unimodular power within the residue bound for " + M.str());
}

/// Iterates f^1(inf) .. f^count(inf) checked against the reference expansion of sqrt k.
inline std::vector<IterateRecord> classify_orbit(const OrbitSpec& spec, std::size_t count)
{
    if (count < 1)
        throw std::invalid_argument("classify_orbit: count must be at least 1");
    const Cf oracle = cf_expand_surd(QuadSurd::sqrt_of(spec.k()));
    std::vector<IterateRecord> out;
    out.reserve(count);
    const std::vector<Rational> values = orbit_values(spec, count);
    for (std::size_t i = 0; i < values.size(); ++i) {
        IterateRecord rec;
        rec.n = i + 1;
        rec.value = values[i];
        rec.pell_error = pell_error(rec.value, spec.k());
        rec.convergent_index = locate_convergent(rec.value, oracle);
        rec.semiconvergent = locate_semiconvergent(rec.value, oracle);
        rec.pellian = abs_value(rec.pell_error) == 1 && rec.value.num() > 0;
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace lftcf
