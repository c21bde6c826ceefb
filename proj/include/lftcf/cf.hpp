#pragma once

/*
 * Continued fractions [c0, c1, c2, ...] with an optional periodic tail.
 *
 * A Cf is "simple" when every term after the first is >= 1; the first
 * term may be any integer. Pattern continued fractions built from
 * packets may carry zero or negative terms and are only simple in
 * favourable regimes; normalize_zeros() removes zeros by the fusion
 * [..., x, 0, y, ...] = [..., x + y, ...].
 *
 * cf_expand_surd() is the reference expansion of a quadratic surd. It
 * runs the complete-quotient recursion (P + sqrt D)/Q on exact integers
 * and shares no code with the pattern machinery.
 *
 * Indexing: convergent(cf, n) is the value of the first n terms, so
 * convergent(cf, 0) is infinity and convergent(cf, 1) = c0.
 */

#include "integer.hpp"
#include "lft.hpp"
#include "quad_surd.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lftcf {

struct Cf {
    std::vector<Integer> head;
    std::vector<Integer> period; // empty: finite

    static Cf finite(std::vector<Integer> terms) { return Cf{std::move(terms), {}}; }
    static Cf periodic(std::vector<Integer> head, std::vector<Integer> period)
    {
        if (period.empty())
            throw std::invalid_argument("Cf: empty period");
        return Cf{std::move(head), std::move(period)};
    }

    bool is_periodic() const { return !period.empty(); }
    bool is_finite() const { return period.empty(); }

    /// Number of terms of a finite Cf.
    std::size_t size() const
    {
        if (is_periodic())
            throw std::logic_error("Cf: size of an infinite continued fraction");
        return head.size();
    }

    bool has_term(std::size_t i) const { return is_periodic() || i < head.size(); }

    const Integer& term(std::size_t i) const
    {
        if (i < head.size())
            return head[i];
        if (period.empty())
            throw std::out_of_range("Cf: term " + std::to_string(i) + " of a " + std::to_string(head.size()) +
                                    "-term continued fraction");
        return period[(i - head.size()) % period.size()];
    }

    /// The first n terms as a finite Cf.
    Cf truncate(std::size_t n) const
    {
        std::vector<Integer> t;
        t.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            t.push_back(term(i));
        return finite(std::move(t));
    }

    bool is_simple() const
    {
        for (std::size_t i = 1; i < head.size(); ++i)
            if (head[i] < 1)
                return false;
        for (std::size_t i = 0; i < period.size(); ++i)
            if (period[i] < 1 && (head.size() + i) > 0)
                return false;
        return true;
    }

    friend bool operator==(const Cf&, const Cf&) = default;
};

enum class Parity { even, odd, shortest };

/// Running numerators/denominators p_n, q_n of the first n terms.
class ConvergentStream {
public:
    const Integer& p() const { return p_; }
    const Integer& q() const { return q_; }
    const Integer& prev_p() const { return pp_; }
    const Integer& prev_q() const { return pq_; }
    std::size_t count() const { return n_; }

    Rational value() const { return Rational(p_, q_); }

    void push(const Integer& c)
    {
        Integer np = c * p_ + pp_;
        Integer nq = c * q_ + pq_;
        pp_ = std::move(p_);
        pq_ = std::move(q_);
        p_ = std::move(np);
        q_ = std::move(nq);
        ++n_;
    }

private:
    Integer p_ = 1, q_ = 0;   // empty prefix: infinity
    Integer pp_ = 0, pq_ = 1; // formal predecessor
    std::size_t n_ = 0;
};

/// x -> [c0, ..., c_{n-1}, x] as the raw product of term matrices [[c,1],[1,0]].
inline Lft prefix_lft(const Cf& cf, std::size_t n)
{
    ConvergentStream s;
    for (std::size_t i = 0; i < n; ++i)
        s.push(cf.term(i));
    return Lft(s.p(), s.prev_p(), s.q(), s.prev_q());
}

inline Rational convergent(const Cf& cf, std::size_t n)
{
    if (!cf.has_term(n == 0 ? 0 : n - 1) && n > 0)
        throw std::out_of_range("convergent: " + std::to_string(n) + " terms requested from a " +
                                std::to_string(cf.head.size()) + "-term continued fraction");
    ConvergentStream s;
    for (std::size_t i = 0; i < n; ++i)
        s.push(cf.term(i));
    return s.value();
}

/// Value of a finite Cf.
inline Rational finite_value(const Cf& cf)
{
    return convergent(cf, cf.size());
}

/// Value of a periodic Cf: the head prefix applied to the attracting fixed point of one period.
inline QuadSurd periodic_value(const Cf& cf)
{
    if (!cf.is_periodic())
        throw std::invalid_argument("periodic_value: finite continued fraction");
    ConvergentStream t;
    for (const Integer& c : cf.period)
        t.push(c);
    const Integer& P = t.p();
    const Integer& Pp = t.prev_p();
    const Integer& Q = t.q();
    const Integer& Qp = t.prev_q();
    const Integer tr = P + Qp;
    const Integer disc = tr * tr - 4 * (P * Qp - Pp * Q);
    if (Q == 0 || disc <= 0 || is_perfect_square(disc))
        throw std::domain_error("periodic_value: period does not define a quadratic irrational");
    const int dir = (tr >= 0) ? 1 : -1;
    const QuadSurd y(P - Qp, dir, 2 * Q, disc);
    return prefix_lft(Cf::finite(cf.head), cf.head.size()).apply(y);
}

/// Simple expansion of a finite rational with the requested term-count parity.
inline Cf cf_of_rational(const Rational& x, Parity parity)
{
    if (x.is_infinite())
        throw std::invalid_argument("cf_of_rational: infinite value");
    std::vector<Integer> t;
    Integer a = x.num();
    Integer b = x.den();
    while (b != 0) {
        Integer q = floor_div(a, b);
        Integer r = a - q * b;
        t.push_back(std::move(q));
        a = std::move(b);
        b = std::move(r);
    }
    const bool odd = (t.size() % 2) == 1;
    if (parity == Parity::shortest || (parity == Parity::odd) == odd)
        return Cf::finite(std::move(t));
    // [..., c] = [..., c - 1, 1]
    t.back() -= 1;
    t.emplace_back(1);
    return Cf::finite(std::move(t));
}

/// Reference expansion of an irrational real quadratic surd, with minimal preperiod and period.
inline Cf cf_expand_surd(const QuadSurd& x)
{
    if (x.is_rational())
        throw std::invalid_argument("cf_expand_surd: rational input " + x.str());
    // x = (P + sqrt D) / Q with Q | D - P^2.
    Integer D = x.b() * x.b() * x.k();
    Integer P = (x.b() > 0) ? x.a() : Integer(-x.a());
    Integer Q = (x.b() > 0) ? x.c() : Integer(-x.c());
    if (mod_floor(D - P * P, abs_value(Q)) != 0) {
        const Integer aq = abs_value(Q);
        P *= aq;
        Q *= aq;
        D *= aq * aq;
    }
    const Integer r = isqrt(D);
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    std::vector<Integer> terms;
    while (true) {
        auto [it, inserted] = seen.emplace(std::make_pair(P, Q), terms.size());
        if (!inserted) {
            const std::size_t start = it->second;
            std::vector<Integer> head(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
            std::vector<Integer> period(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end());
            return Cf::periodic(std::move(head), std::move(period));
        }
        // floor((P + sqrt D) / Q) without leaving the integers
        const Integer a = (Q > 0) ? floor_div(P + r, Q) : floor_div(P + r + 1, Q);
        terms.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

/// Index n with convergent(cf, n) == x, searching until denominators pass x's.
inline std::optional<std::size_t> locate_convergent(const Rational& x, const Cf& cf)
{
    if (x.is_infinite())
        return 0;
    ConvergentStream s;
    for (std::size_t n = 1; cf.has_term(n - 1); ++n) {
        s.push(cf.term(n - 1));
        if (s.p() == x.num() && s.q() == x.den())
            return n;
        if (n >= 2 && s.q() > x.den())
            break;
    }
    return std::nullopt;
}

struct SemiconvergentHit {
    std::size_t index; // position whose term is replaced
    Integer b;         // 0 <= b <= c_index
    friend bool operator==(const SemiconvergentHit&, const SemiconvergentHit&) = default;
};

/// Smallest (index, b) with 0 <= b <= c_index and [c0, ..., c_{index-1}, b] == x.
inline std::optional<SemiconvergentHit> locate_semiconvergent(const Rational& x, const Cf& cf)
{
    const Integer& u = x.num();
    const Integer& w = x.den();
    ConvergentStream s; // holds the first j terms at the top of iteration j
    for (std::size_t j = 0; cf.has_term(j); ++j) {
        if (j >= 3 && s.prev_q() > w)
            break;
        // (b p_j + p_{j-1}) / (b q_j + q_{j-1}) = u / w  <=>  b (u q_j - w p_j) = w p_{j-1} - u q_{j-1}
        const Integer coef = u * s.q() - w * s.p();
        const Integer rhs = w * s.prev_p() - u * s.prev_q();
        if (coef != 0 && rhs % coef == 0) {
            const Integer b = rhs / coef;
            if (b >= 0 && b <= cf.term(j))
                return SemiconvergentHit{j, b};
        }
        s.push(cf.term(j));
    }
    return std::nullopt;
}

/// All values [c0, ..., c_{j-1}, b] with 0 <= b <= c_j of a finite Cf, plus infinity (the empty prefix).
inline std::set<std::pair<Integer, Integer>> semiconvergent_set(const Cf& cf)
{
    std::set<std::pair<Integer, Integer>> out;
    out.emplace(1, 0);
    ConvergentStream s;
    for (std::size_t j = 0; j < cf.size(); ++j) {
        for (Integer b = 0; b <= cf.term(j); ++b) {
            const Rational v(b * s.p() + s.prev_p(), b * s.q() + s.prev_q());
            out.emplace(v.num(), v.den());
        }
        s.push(cf.term(j));
    }
    return out;
}

/// x -> [c0, ..., cn, x] = (p x + g) / (q x + h) for a finite simple Cf of p/q.
inline Lft concat_tail_lft(const Cf& cf)
{
    if (!cf.is_finite() || cf.head.empty())
        throw std::invalid_argument("concat_tail_lft: needs a nonempty finite continued fraction");
    if (!cf.is_simple())
        throw std::invalid_argument("concat_tail_lft: continued fraction is not simple");
    return prefix_lft(cf, cf.size());
}

/// The expansion of x + shift, given that of x.
inline Cf shift_first_term(const Cf& cf, const Integer& shift)
{
    Cf out = cf;
    if (out.head.empty())
        out.head = out.period;
    if (out.head.empty())
        throw std::invalid_argument("shift_first_term: empty continued fraction");
    out.head[0] += shift;
    return out;
}

/// Minimal period, with the head folded into the period as far as possible.
inline Cf canonical(const Cf& cf)
{
    if (cf.is_finite())
        return cf;
    std::vector<Integer> head = cf.head;
    std::vector<Integer> period = cf.period;
    const std::size_t L = period.size();
    for (std::size_t d = 1; d < L; ++d) {
        if (L % d != 0)
            continue;
        bool ok = true;
        for (std::size_t i = d; i < L && ok; ++i)
            ok = period[i] == period[i - d];
        if (ok) {
            period.resize(d);
            break;
        }
    }
    while (!head.empty() && head.back() == period.back()) {
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
        head.pop_back();
    }
    return Cf{std::move(head), std::move(period)};
}

/// True when both periodic words describe the same infinite sequence.
inline bool same_sequence(const Cf& a, const Cf& b) { return canonical(a) == canonical(b); }

namespace detail {

class ZeroFuser {
public:
    void feed(const Integer& t)
    {
        if (out.empty() && !started_) {
            out.push_back(t);
            started_ = true;
        } else if (fuse_next) {
            out.back() += t;
            fuse_next = false;
        } else if (t == 0) {
            fuse_next = true;
        } else {
            out.push_back(t);
        }
    }

    std::vector<Integer> out;
    bool fuse_next = false;

private:
    bool started_ = false;
};

} // namespace detail

/// Eliminates zero terms by [..., x, 0, y, ...] = [..., x + y, ...]; the value is unchanged.
inline Cf normalize_zeros(const Cf& cf)
{
    for (std::size_t i = 1; i < cf.head.size(); ++i)
        if (cf.head[i] < 0)
            throw std::invalid_argument("normalize_zeros: negative term");
    for (const Integer& c : cf.period)
        if (c < 0)
            throw std::invalid_argument("normalize_zeros: negative term");

    detail::ZeroFuser fz;
    for (const Integer& c : cf.head)
        fz.feed(c);

    if (cf.is_finite()) {
        if (fz.fuse_next) {
            // [..., w, x, 0] = [..., w]
            fz.out.pop_back();
            if (fz.out.empty())
                throw std::domain_error("normalize_zeros: value is infinite");
        }
        Cf r = Cf::finite(std::move(fz.out));
        if (!r.is_simple())
            throw std::logic_error("normalize_zeros: result is not simple");
        return r;
    }

    // Each copy of the period acts on (out, fuse_next) depending only on fuse_next at its start,
    // so the flag sequence repeats within three copies.
    std::vector<bool> flag;
    std::vector<std::size_t> mark;
    auto feed_copy = [&] {
        flag.push_back(fz.fuse_next);
        mark.push_back(fz.out.size());
        for (const Integer& c : cf.period)
            fz.feed(c);
    };
    std::size_t first = 0, cycle = 0;
    for (std::size_t j = 0; cycle == 0; ++j) {
        feed_copy();
        for (std::size_t i = 0; i < j; ++i)
            if (flag[i] == flag[j]) {
                first = i;
                cycle = j - i;
                break;
            }
    }
    const std::size_t start = first + cycle;
    while (mark.size() <= start + 2 * cycle)
        feed_copy();
    if (mark[start + cycle] == mark[start])
        throw std::domain_error("normalize_zeros: alternating-zero tail, value is rational");
    const std::size_t lo = mark[start] - 1;
    const std::size_t hi = mark[start + cycle] - 1;
    std::vector<Integer> head(fz.out.begin(), fz.out.begin() + static_cast<std::ptrdiff_t>(lo));
    std::vector<Integer> period(fz.out.begin() + static_cast<std::ptrdiff_t>(lo),
                                fz.out.begin() + static_cast<std::ptrdiff_t>(hi));
    Cf r = canonical(Cf::periodic(std::move(head), std::move(period)));
    if (!r.is_simple())
        throw std::logic_error("normalize_zeros: result is not simple");
    return r;
}

/// "[c0; c1, c2, (c3, c4)]": parentheses mark the repeating block.
inline std::string to_string(const Cf& cf)
{
    auto join = [](const std::vector<Integer>& v, std::size_t from) {
        std::string s;
        for (std::size_t i = from; i < v.size(); ++i) {
            if (i > from)
                s += ", ";
            s += v[i].get_str();
        }
        return s;
    };
    std::string s = "[";
    if (!cf.head.empty()) {
        s += cf.head[0].get_str();
        if (cf.head.size() > 1 || cf.is_periodic())
            s += "; ";
        s += join(cf.head, 1);
        if (cf.head.size() > 1 && cf.is_periodic())
            s += ", ";
    }
    if (cf.is_periodic())
        s += "(" + join(cf.period, 0) + ")";
    return s + "]";
}

/// Inverse of to_string(); whitespace-insensitive.
inline Cf parse_cf(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    auto fail = [&](const std::string& why) -> Cf {
        throw std::invalid_argument("parse_cf: " + why + " in '" + text + "'");
    };
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        return fail("expected [ ... ]");
    s = s.substr(1, s.size() - 2);

    Cf cf;
    std::size_t pos = 0;
    bool in_period = false;
    bool closed = false;
    std::size_t items = 0;
    auto read_int = [&]() {
        std::size_t end = pos;
        if (end < s.size() && (s[end] == '-' || s[end] == '+'))
            ++end;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
            ++end;
        Integer v = parse_integer(s.substr(pos, end - pos));
        pos = end;
        return v;
    };
    while (pos < s.size()) {
        if (closed)
            return fail("terms after the periodic block");
        if (s[pos] == '(') {
            if (in_period)
                return fail("nested parentheses");
            in_period = true;
            ++pos;
            continue;
        }
        (in_period ? cf.period : cf.head).push_back(read_int());
        ++items;
        if (pos < s.size() && s[pos] == ')') {
            if (!in_period)
                return fail("unmatched )");
            closed = true;
            ++pos;
        }
        if (pos < s.size()) {
            const char sep = s[pos];
            if (sep == ';' && items != 1)
                return fail("';' allowed only after the first term");
            if (sep != ',' && sep != ';')
                return fail(std::string("unexpected '") + sep + "'");
            ++pos;
            if (pos == s.size())
                return fail("trailing separator");
        }
    }
    if (in_period && !closed)
        return fail("unterminated (");
    if (in_period && cf.period.empty())
        return fail("empty period");
    if (cf.head.empty() && cf.period.empty())
        return fail("no terms");
    return cf;
}

} // namespace lftcf
