#include <lftcf/lftcf.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace lftcf;

namespace {

// Rational bracket [lo, hi] around sqrt(k), from isqrt of k * 4^bits.
std::pair<Rational, Rational> sqrt_bracket(const Integer& k, unsigned bits)
{
    const Integer scale = pow_int(2, bits);
    Integer r = 0, hi = k * scale + 1;
    // bisection keeps this independent of the library's isqrt
    while (hi - r > 1) {
        const Integer mid = (r + hi) / 2;
        if (mid * mid <= k * scale * scale)
            r = mid;
        else
            hi = mid;
    }
    return {Rational(r, scale), Rational(r + 1, scale)};
}

struct Interval {
    Rational lo, hi;
};

Interval enclose(const QuadSurd& x, unsigned bits)
{
    const auto [slo, shi] = sqrt_bracket(x.k(), bits);
    const Rational a = x.rational_part();
    const Rational b = x.surd_part();
    Rational p = a + b * slo, q = a + b * shi;
    if (q < p)
        std::swap(p, q);
    return {p, q};
}

} // namespace

TEST(Rational, ReducesAndKeepsPositiveDenominator)
{
    const Rational r(Integer(6), Integer(-4));
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(Integer(0), Integer(-7)).str(), "0");
}

TEST(Rational, InfinityFollowsProjectiveRules)
{
    const Rational inf = Rational::infinity();
    EXPECT_TRUE(inf.is_infinite());
    EXPECT_EQ(Rational(1) / inf, Rational(0));
    EXPECT_EQ(Rational(3) * inf + Rational(5), inf);
    EXPECT_EQ(Rational(2) / Rational(0), inf);
    EXPECT_EQ(inf.reciprocal(), Rational(0));
    EXPECT_THROW((void)(inf + inf), std::domain_error);
    EXPECT_THROW((void)(Rational(0) * inf), std::domain_error);
    EXPECT_THROW((void)(inf < Rational(1)), std::domain_error);
    EXPECT_EQ(inf.str(), "inf");
}

TEST(Rational, ParseRoundTrips)
{
    for (const char* s : {"0", "7", "-7", "22/7", "-1/3", "inf"})
        EXPECT_EQ(Rational::parse(s).str(), s);
    EXPECT_EQ(Rational::parse("4/-6"), Rational(Integer(-2), Integer(3)));
    EXPECT_THROW(Rational::parse("1/2/3"), std::invalid_argument);
    EXPECT_THROW(Rational::parse(""), std::invalid_argument);
    EXPECT_THROW(Rational::parse("0/0"), std::invalid_argument);
}

TEST(Rational, FloorAndCeilOfNegatives)
{
    EXPECT_EQ(Rational(Integer(-7), Integer(2)).floor(), -4);
    EXPECT_EQ(Rational(Integer(-7), Integer(2)).ceil(), -3);
    EXPECT_EQ(Rational(Integer(7), Integer(2)).floor(), 3);
}

TEST(Integer, SquareRootAndModularHelpers)
{
    EXPECT_EQ(isqrt(Integer("100000003")), 10000);
    EXPECT_TRUE(is_perfect_square(Integer("100000000")));
    EXPECT_FALSE(is_perfect_square(Integer(-4)));
    EXPECT_EQ(mod_floor(-3, 5), 2);
    EXPECT_EQ(mod_inverse(5, 2), 1);
    EXPECT_EQ(mod_inverse(7, 1), 0);
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(ceil_div(-7, 2), -3);
    EXPECT_THROW(parse_integer("12x"), std::invalid_argument);
    EXPECT_EQ(parse_integer("-0012"), -12);
}

TEST(QuadSurd, ConstructionValidatesAndCanonicalizes)
{
    EXPECT_THROW(QuadSurd(1, 1, 1, 4), std::invalid_argument);
    EXPECT_THROW(QuadSurd(1, 1, 1, -3), std::invalid_argument);
    EXPECT_THROW(QuadSurd(1, 1, 0, 3), std::domain_error);
    const QuadSurd x(4, 6, -2, 3);
    EXPECT_EQ(x.a(), -2);
    EXPECT_EQ(x.b(), -3);
    EXPECT_EQ(x.c(), 1);
}

TEST(QuadSurd, FloorExamples)
{
    EXPECT_EQ(QuadSurd(0, 1, 1, 2).floor(), 1);
    EXPECT_EQ(QuadSurd(3, -1, 1, 5).floor(), 0);
    // 10000^2 <= 10^8 + 3 < 10001^2
    const Integer k("100000003");
    ASSERT_TRUE(Integer(10000) * 10000 <= k && k < Integer(10001) * 10001);
    EXPECT_EQ(QuadSurd(10000, 1, 1, k).floor(), 20000);
    EXPECT_EQ(QuadSurd(-1, -1, 2, 5).floor(), -2);
    EXPECT_EQ(QuadSurd(0, -1, 1, 2).ceil(), -1);
}

TEST(QuadSurd, NormConjugateAndFieldOperations)
{
    const QuadSurd x(3, 2, 5, 7);
    EXPECT_EQ(x.conjugate().conjugate(), x);
    EXPECT_EQ(x.norm() * Rational(25), Rational(9 - 4 * 7));
    EXPECT_EQ(x * x.reciprocal(), Rational(1));
    EXPECT_EQ((x + x.conjugate()), x.trace());
    EXPECT_EQ(x * x.conjugate(), x.norm());
    EXPECT_EQ(x.pow(3), x * x * x);
    EXPECT_THROW((void)(x + QuadSurd::sqrt_of(2)), std::invalid_argument);
    EXPECT_EQ(QuadSurd(1, 1, 1, 8).rebase(2), QuadSurd(1, 2, 1, 2));
}

TEST(QuadSurd, ExactComparisonAgreesWithIntervals)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coef(-60, 60);
    std::uniform_int_distribution<long> den(1, 30);
    std::uniform_int_distribution<long> rad(2, 50);
    std::size_t decided = 0;
    for (int i = 0; i < 1000; ++i) {
        long k = rad(rng);
        while (is_perfect_square(Integer(k)))
            k = rad(rng);
        const QuadSurd x(coef(rng), coef(rng), den(rng), k);
        const QuadSurd y(coef(rng), coef(rng), den(rng), k);
        const Rational r(Integer(coef(rng)), Integer(den(rng)));
        for (unsigned bits = 64; bits <= 1024; bits *= 2) {
            const Interval ix = enclose(x, bits), iy = enclose(y, bits);
            if (ix.hi < iy.lo) {
                EXPECT_LT(x, y);
                ++decided;
                break;
            }
            if (iy.hi < ix.lo) {
                EXPECT_GT(x, y);
                ++decided;
                break;
            }
            if (x == y)
                break;
        }
        const Interval ix = enclose(x, 256);
        if (ix.hi < r) {
            EXPECT_LT(x, r);
        } else if (r < ix.lo) {
            EXPECT_GT(x, r);
        }
        EXPECT_EQ(x.signum(), x < Rational(0) ? -1 : (x == Rational(0) ? 0 : 1));
    }
    EXPECT_GT(decided, 900u);
}

TEST(Lft, ApplyExamples)
{
    const Lft f = orbit_map(2, 1);
    EXPECT_EQ(f.apply(Rational::infinity()), Rational(1));
    EXPECT_EQ(f.apply(Rational(1)), Rational(Integer(3), Integer(2)));
    EXPECT_EQ(orbit_map(5, 3).apply(QuadSurd::sqrt_of(5)), QuadSurd::sqrt_of(5));
    // pole maps to infinity
    EXPECT_TRUE(f.apply(Rational(-1)).is_infinite());
    EXPECT_THROW(Lft(1, 2, 2, 4), std::invalid_argument);
}

TEST(Lft, PowersAndComposition)
{
    const Lft f = orbit_map(2, 1);
    EXPECT_EQ(lft_pow(f, 0), Lft::identity());
    EXPECT_EQ(lft_pow(f, 2).apply(Rational::infinity()), f.apply(f.apply(Rational::infinity())));
    EXPECT_EQ(lft_pow(f, 2).apply(Rational::infinity()), Rational(Integer(3), Integer(2)));
    const Lft g(3, -1, 7, 2);
    EXPECT_EQ(lft_compose(g, g.inverse()), Lft::identity());
    EXPECT_EQ(Lft(2, 4, 6, 10), Lft(-1, -2, -3, -5));
    const Lft p = Lft(-2, 4, 6, 10).primitive();
    EXPECT_EQ(p.m11(), 1);
    EXPECT_EQ(p.m22(), -5);
    EXPECT_EQ(Lft::from_rationals(Rational(Integer(1), Integer(2)), 1, 1, Rational(Integer(1), Integer(2))),
              Lft(1, 2, 2, 1));
}

TEST(Lft, CompositionActsAsSuccessiveApplication)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> e(-9, 9);
    int checked = 0;
    while (checked < 300) {
        const Integer a = e(rng), b = e(rng), c = e(rng), d = e(rng);
        const Integer a2 = e(rng), b2 = e(rng), c2 = e(rng), d2 = e(rng);
        if (a * d == b * c || a2 * d2 == b2 * c2)
            continue;
        const Lft g(a, b, c, d), h(a2, b2, c2, d2);
        const Rational x(Integer(e(rng)), Integer(1 + checked % 7));
        EXPECT_EQ((g * h).apply(x), g.apply(h.apply(x)));
        const long radicands[] = {2, 3, 5, 6, 7};
        const QuadSurd s(e(rng), 1 + checked % 5, 1 + checked % 3, radicands[checked % 5]);
        const QuadSurd gh = (g * h).apply(s);
        EXPECT_EQ(gh, g.apply(h.apply(s)));
        ++checked;
    }
}
