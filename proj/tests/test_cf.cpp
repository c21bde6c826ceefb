#include <lftcf/lftcf.hpp>
#include <lftcf/verify.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace lftcf;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs)
{
    return std::vector<Integer>(xs.begin(), xs.end());
}

// [t0, ..., tn] evaluated from the back; 0 terms are fine, a zero denominator yields infinity.
Rational evaluate(const std::vector<Integer>& terms)
{
    Rational x = Rational::infinity();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        x = Rational(*it) + x.reciprocal();
    return x;
}

// All [c0..c_{n-1}, b], 0 <= b <= c_n, for n < depth.
std::set<std::pair<Integer, Integer>> brute_semiconvergent_pairs(const Cf& cf, std::size_t depth)
{
    std::set<std::pair<Integer, Integer>> out;
    std::vector<Integer> prefix;
    for (std::size_t n = 0; n < depth && cf.has_term(n); ++n) {
        for (Integer b = 0; b <= cf.term(n); ++b) {
            std::vector<Integer> t = prefix;
            t.push_back(b);
            const Rational v = evaluate(t);
            out.emplace(v.num(), v.den());
        }
        prefix.push_back(cf.term(n));
    }
    return out;
}

} // namespace

TEST(CfOfRational, Examples)
{
    EXPECT_EQ(cf_of_rational(Rational(Integer(5), Integer(2)), Parity::odd), Cf::finite(ints({2, 1, 1})));
    EXPECT_EQ(cf_of_rational(Rational(10), Parity::odd), Cf::finite(ints({10})));
    EXPECT_EQ(cf_of_rational(Rational(10), Parity::even), Cf::finite(ints({9, 1})));
    EXPECT_EQ(cf_of_rational(Rational(Integer(5), Integer(2)), Parity::shortest), Cf::finite(ints({2, 2})));
    EXPECT_EQ(cf_of_rational(Rational(Integer(-7), Integer(3)), Parity::shortest), Cf::finite(ints({-3, 1, 2})));
    EXPECT_THROW(cf_of_rational(Rational::infinity(), Parity::odd), std::invalid_argument);
}

TEST(CfOfRational, BothParitiesEvaluateBack)
{
    for (long q = 1; q <= 500; ++q)
        for (long p = -500; p <= 500; ++p) {
            if (gcd(Integer(p), Integer(q)) != 1)
                continue;
            const Rational x{Integer(p), Integer(q)};
            const Cf odd = cf_of_rational(x, Parity::odd);
            const Cf even = cf_of_rational(x, Parity::even);
            ASSERT_EQ(odd.size() % 2, 1u) << x;
            ASSERT_EQ(even.size() % 2, 0u) << x;
            ASSERT_EQ(odd.size() + 1 == even.size() || even.size() + 1 == odd.size(), true) << x;
            ASSERT_TRUE(odd.is_simple() && even.is_simple()) << x;
            ASSERT_EQ(finite_value(odd), x);
            ASSERT_EQ(evaluate(even.head), x);
        }
}

TEST(CfExpandSurd, Examples)
{
    const Cf big = cf_expand_surd(QuadSurd::sqrt_of(Integer("100000003")));
    EXPECT_EQ(big.head, ints({10000}));
    const std::vector<Integer> start = ints({6666, 1, 2, 2221, 1, 8, 740, 1, 1, 1, 2, 2, 1, 246, 4, 1, 3, 4, 82});
    EXPECT_TRUE(std::equal(start.begin(), start.end(), big.period.begin()));

    EXPECT_EQ(cf_expand_surd(QuadSurd(1, 1, 1, 2)), Cf::periodic({}, ints({2})));
    EXPECT_EQ(cf_expand_surd(QuadSurd(2, 1, 1, 5)), Cf::periodic({}, ints({4})));
    EXPECT_EQ(cf_expand_surd(QuadSurd::sqrt_of(2)), Cf::periodic(ints({1}), ints({2})));
    EXPECT_EQ(cf_expand_surd(QuadSurd::sqrt_of(13)), Cf::periodic(ints({3}), ints({1, 1, 1, 1, 6})));
    EXPECT_THROW(cf_expand_surd(QuadSurd::from_rational(3, 2)), std::invalid_argument);
}

TEST(CfExpandSurd, OnePeriodFixesTheTail)
{
    for (long k : {2, 3, 5, 7, 13, 19, 46, 94, 151, 421})
        for (long a = -7; a <= 7; a += 2)
            for (long b : {-3, -1, 1, 2})
                for (long c : {1, 2, 5, 9}) {
                    const QuadSurd x(a, b, c, k);
                    const Cf cf = cf_expand_surd(x);
                    ASSERT_TRUE(cf.is_simple());
                    const QuadSurd tail = prefix_lft(cf, cf.head.size()).inverse().apply(x);
                    const Lft period = prefix_lft(Cf::finite(cf.period), cf.period.size());
                    ASSERT_EQ(period.apply(tail), tail) << x;
                    ASSERT_EQ(periodic_value(cf), x) << x;
                    ASSERT_EQ(canonical(cf), cf) << "period not minimal for " << x;
                }
}

TEST(Convergent, Examples)
{
    const Cf silver = Cf::periodic({}, ints({2}));
    EXPECT_EQ(convergent(silver, 3), Rational(Integer(12), Integer(5)));
    EXPECT_TRUE(convergent(silver, 0).is_infinite());
    EXPECT_EQ(convergent(Cf::periodic({}, ints({10, 2, 1, 1, 2})), 4), Rational(Integer(52), Integer(5)));
    EXPECT_THROW(convergent(Cf::finite(ints({1, 2})), 3), std::out_of_range);
}

TEST(LocateConvergent, Examples)
{
    const Cf root2 = cf_expand_surd(QuadSurd::sqrt_of(2));
    EXPECT_EQ(locate_convergent(Rational(Integer(3), Integer(2)), root2), 2u);
    EXPECT_EQ(locate_convergent(Rational(Integer(4), Integer(3)), root2), std::nullopt);
    EXPECT_EQ(locate_convergent(Rational(Integer(577), Integer(408)), root2), 8u);
}

TEST(LocateConvergent, RecoversIndexOnRandomExpansions)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> head(-5, 5), term(1, 9), len(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Integer> h{head(rng)}, p;
        for (long i = len(rng); i > 0; --i)
            h.push_back(term(rng));
        for (long i = len(rng); i > 0; --i)
            p.push_back(term(rng));
        const Cf cf = Cf::periodic(h, p);
        for (std::size_t n = 1; n <= 12; ++n)
            ASSERT_EQ(locate_convergent(convergent(cf, n), cf), n) << to_string(cf) << " n=" << n;
    }
}

TEST(LocateSemiconvergent, Examples)
{
    const Cf root5 = cf_expand_surd(QuadSurd::sqrt_of(5));
    ASSERT_EQ(root5, Cf::periodic(ints({2}), ints({4})));
    // 7/5 is not [2, 4, ..., b] for any admissible b; confirmed by the exhaustive scan
    EXPECT_EQ(brute_semiconvergent_pairs(root5, 8).count({7, 5}), 0u);
    EXPECT_EQ(locate_semiconvergent(Rational(Integer(7), Integer(5)), root5), std::nullopt);

    for (std::size_t n = 1; n <= 6; ++n) {
        const auto hit = locate_semiconvergent(convergent(root5, n), root5);
        ASSERT_TRUE(hit.has_value());
        EXPECT_EQ(hit->b, root5.term(hit->index));
    }
    const Cf root2 = cf_expand_surd(QuadSurd::sqrt_of(2));
    EXPECT_EQ(locate_semiconvergent(Rational(Integer(1), Integer(3)), root2), std::nullopt);
    const auto mid = locate_semiconvergent(Rational(Integer(9), Integer(4)), root5);
    ASSERT_TRUE(mid.has_value());
    EXPECT_EQ(mid->index, 1u);
    EXPECT_EQ(mid->b, 4);
}

TEST(LocateSemiconvergent, MatchesExhaustiveScan)
{
    for (long k : {2, 3, 5, 6, 7, 13, 19, 31, 43}) {
        const Cf cf = cf_expand_surd(QuadSurd::sqrt_of(k));
        const auto all = brute_semiconvergent_pairs(cf, 14);
        const Integer c0 = cf.term(0);
        for (long q = 1; q <= 60; ++q)
            for (Integer p = -q; p <= (c0 + 2) * q; ++p) {
                if (gcd(p, Integer(q)) != 1)
                    continue;
                const bool found = locate_semiconvergent(Rational(p, Integer(q)), cf).has_value();
                ASSERT_EQ(found, all.count({p, Integer(q)}) == 1) << "k=" << k << " " << p << "/" << q;
            }
    }
}

TEST(ConcatTailLft, Examples)
{
    const Lft one = concat_tail_lft(Cf::finite(ints({7})));
    EXPECT_EQ(one.m11(), 7);
    EXPECT_EQ(one.m12(), 1);
    EXPECT_EQ(one.m21(), 1);
    EXPECT_EQ(one.m22(), 0);
    const Lft two = concat_tail_lft(Cf::finite(ints({6, 1})));
    EXPECT_EQ(two.m11(), 7);
    EXPECT_EQ(two.m12(), 6);
    EXPECT_EQ(two.m21(), 1);
    EXPECT_EQ(two.m22(), 1);
    const Lft three = concat_tail_lft(Cf::finite(ints({2, 1, 1})));
    EXPECT_EQ(three, Lft(5, 3, 2, 1));
    EXPECT_EQ(three.m12() * three.m21() - three.m22() * three.m11(), 1);
}

TEST(ConcatTailLft, RandomRationalsSatisfyUniquenessConditions)
{
    const verify::SuiteResult r = verify::concat_tail_suite(500);
    EXPECT_EQ(r.checked, 500u);
    EXPECT_TRUE(r.passed()) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(NormalizeZeros, Examples)
{
    EXPECT_EQ(normalize_zeros(Cf::periodic(ints({5}), ints({1, 0, 1, 4}))), Cf::periodic(ints({5}), ints({2, 4})));
    EXPECT_EQ(normalize_zeros(Cf::finite(ints({1, 2, 3}))), Cf::finite(ints({1, 2, 3})));
    EXPECT_EQ(normalize_zeros(Cf::finite(ints({3, 0, 4, 1}))), Cf::finite(ints({7, 1})));
    EXPECT_EQ(normalize_zeros(Cf::periodic({}, ints({4, 1, 0, 2, 0, 1}))), Cf::periodic({}, ints({4})));
    EXPECT_EQ(normalize_zeros(Cf::periodic({}, ints({3, 1, 0, 2}))), Cf::periodic({}, ints({3})));
    EXPECT_THROW(normalize_zeros(Cf::periodic(ints({1}), ints({0, 2}))), std::domain_error);
}

TEST(NormalizeZeros, PreservesValueAndSemiconvergents)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> term(0, 4), len(2, 9);
    int checked = 0;
    while (checked < 500) {
        std::vector<Integer> t;
        for (long i = len(rng); i > 0; --i)
            t.push_back(term(rng));
        if (t.back() == 0)
            continue;
        const Cf raw = Cf::finite(t);
        const Cf fused = normalize_zeros(raw);
        ASSERT_TRUE(fused.is_simple());
        for (std::size_t i = 0; i < fused.size(); ++i)
            ASSERT_TRUE(i == 0 || fused.term(i) != 0);
        ASSERT_EQ(evaluate(fused.head), evaluate(t)) << to_string(raw);
        // infinity ([c0, 0]) only shows up on the raw side when everything fuses into one term
        auto a = brute_semiconvergent_pairs(fused, fused.size());
        auto b = brute_semiconvergent_pairs(raw, raw.size());
        a.erase({1, 0});
        b.erase({1, 0});
        ASSERT_EQ(a, b) << to_string(raw) << " -> " << to_string(fused);
        ++checked;
    }
}

TEST(CfText, RoundTrips)
{
    const Cf a = Cf::periodic(ints({3}), ints({1, 1, 1, 1, 6}));
    EXPECT_EQ(to_string(a), "[3; (1, 1, 1, 1, 6)]");
    EXPECT_EQ(to_string(Cf::periodic({}, ints({2}))), "[(2)]");
    EXPECT_EQ(to_string(Cf::finite(ints({2, 1, 1}))), "[2; 1, 1]");
    EXPECT_EQ(to_string(Cf::finite(ints({-4}))), "[-4]");
    EXPECT_EQ(to_string(Cf::periodic(ints({0, 2}), ints({-1, 3}))), "[0; 2, (-1, 3)]");
    for (const Cf& cf : {a, Cf::periodic({}, ints({10, 2, 1, 1, 2})), Cf::finite(ints({0, 1})),
                         Cf::periodic(ints({7, 0}), ints({5}))})
        EXPECT_EQ(parse_cf(to_string(cf)), cf);
    EXPECT_EQ(parse_cf(" [ 1 ;(2) ] "), Cf::periodic(ints({1}), ints({2})));
    for (const char* bad : {"", "[]", "[1; 2", "[1, 2]x", "[1; (2), 3]", "[1; ()]", "[a]", "[1;; 2]"})
        EXPECT_THROW(parse_cf(bad), std::invalid_argument) << bad;
}

TEST(Canonical, FoldsHeadAndShortensPeriod)
{
    EXPECT_EQ(canonical(Cf::periodic(ints({2, 1, 2}), ints({1, 2, 1, 2}))), Cf::periodic({}, ints({2, 1})));
    EXPECT_TRUE(same_sequence(Cf::periodic({}, ints({4, 1, 4, 1})), Cf::periodic(ints({4}), ints({1, 4}))));
    EXPECT_FALSE(same_sequence(Cf::periodic({}, ints({1, 4})), Cf::periodic({}, ints({4, 1}))));
}
