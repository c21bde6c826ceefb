#pragma once

/*
 * Packet structure of the continued fraction of xi = d + sqrt(k) when
 * R = 4d^2/(k - d^2) is an integer.
 *
 * Parameters (s, v, m, eps) give
 *
 *     d = s v m / 2,   k = s^2 v (v m^2 + 4 eps) / 4,   xi^2 = s v m xi + eps s^2 v.
 *
 * With v_n = v (n even) or 1 (n odd) and a_0 = 0, a_1 = 1,
 * a_{n+1} = v_n m a_n + eps a_{n-1}, packet n is the parity-selected
 * expansion of xhat_n - delta, where
 *
 *     s_n = gcd(a_n, s),   m_n = -a_{n-1} (a_n/s_n)^-1 mod s/s_n,
 *     xhat_n = (s_n v_n m - eps m_n) / (s/s_n),
 *
 * delta = 0 for eps = +1 (odd-length packets) and 1 for eps = -1
 * (even-length packets). Concatenating the packets expands xi - delta,
 * and the first n packets evaluate to f_xi^n(inf) - delta where
 * f_xi(x) = s v m + eps s^2 v / x.
 */

#include "cf.hpp"
#include "integer.hpp"
#include "lft.hpp"
#include "quad_surd.hpp"
#include "rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace lftcf {

class PatternParams {
public:
    PatternParams(Integer s, Integer v, Integer m, int eps) : s_(std::move(s)), v_(std::move(v)), m_(std::move(m)), eps_(eps)
    {
        if (s_ < 1 || v_ < 1 || m_ < 1)
            throw std::invalid_argument("pattern parameters s, v, m must be positive integers");
        if (eps_ != 1 && eps_ != -1)
            throw std::invalid_argument("eps must be +1 or -1");
        if (eps_ == -1 && v_ * m_ * m_ <= 4)
            throw std::invalid_argument("eps = -1 requires v m^2 > 4 (otherwise xi is rational or not real)");
    }

    const Integer& s() const { return s_; }
    const Integer& v() const { return v_; }
    const Integer& m() const { return m_; }
    int eps() const { return eps_; }
    int delta() const { return eps_ == 1 ? 0 : 1; }

    Rational d() const { return Rational(s_ * v_ * m_, 2); }
    Rational k() const { return Rational(discriminant(), 4); }

    /// s^2 v (v m^2 + 4 eps) = 4k.
    Integer discriminant() const { return s_ * s_ * v_ * (v_ * m_ * m_ + 4 * eps_); }

    /// Trace and norm data of xi^2 - t xi - u = 0.
    Integer t() const { return s_ * v_ * m_; }
    Integer u() const { return eps_ * s_ * s_ * v_; }

    QuadSurd xi() const { return QuadSurd(t(), 1, 2, discriminant()); }
    QuadSurd xi_conjugate() const { return xi().conjugate(); }

    /// v_n: v for even n, 1 for odd n.
    const Integer& v_at(std::size_t n) const
    {
        static const Integer one = 1;
        return (n % 2 == 0) ? v_ : one;
    }

    std::string str() const
    {
        return "(s=" + s_.get_str() + ", v=" + v_.get_str() + ", m=" + m_.get_str() +
               ", eps=" + (eps_ == 1 ? "+1" : "-1") + ")";
    }

    friend bool operator==(const PatternParams&, const PatternParams&) = default;

private:
    Integer s_, v_, m_;
    int eps_;
};

/// (s, v, m, eps) with d = svm/2 and k = d^2 + eps s^2 v, for integers k, d with R integral.
inline PatternParams parametrize(const Integer& k, const Integer& d)
{
    if (k <= 0 || is_perfect_square(k))
        throw std::invalid_argument("k = " + k.get_str() + " must be a positive nonsquare integer");
    if (d <= 0)
        throw std::invalid_argument("d = " + d.get_str() + " must be positive");
    const Integer diff = k - d * d;
    const Integer num = 4 * d * d;
    if (num % diff != 0)
        throw std::invalid_argument("R = 4d^2/(k-d^2) = " + Rational(num, diff).str() + " is not an integer");
    const Integer R = num / diff;
    const Integer v = gcd(R, diff);
    const Integer m2 = abs_value(R) / v;
    const Integer s2 = abs_value(diff) / v;
    if (!is_perfect_square(m2) || !is_perfect_square(s2))
        throw std::logic_error("parametrize: |R|/v or |k-d^2|/v is not a square");
    PatternParams p(isqrt(s2), v, isqrt(m2), sign(diff));
    if (p.d() != Rational(d) || p.k() != Rational(k))
        throw std::logic_error("parametrize: parameters do not reproduce (k, d)");
    return p;
}

/// a_0 .. a_count.
inline std::vector<Integer> a_sequence(const PatternParams& p, std::size_t count)
{
    std::vector<Integer> a{0, 1};
    a.reserve(count + 1);
    for (std::size_t n = 1; n < count; ++n)
        a.push_back(p.v_at(n) * p.m() * a[n] + p.eps() * a[n - 1]);
    a.resize(count + 1);
    return a;
}

/// x -> s v m + eps s^2 v / x.
inline Lft f_xi(const PatternParams& p) { return Lft(p.t(), p.u(), 1, 0); }

struct PacketData {
    std::size_t n = 0;
    Integer v_n;
    Integer a_n, a_next;
    Integer s_n;
    Integer m_n;
    Rational xi_hat;
    Cf packet;
};

namespace detail {

/// Walks a_{n-1}, a_n forward; a_{-1} = eps makes a_1 = v m a_0 + eps a_{-1} hold.
class PacketWalker {
public:
    explicit PacketWalker(const PatternParams& p) : p_(p), prev_(p.eps()), cur_(0) {}

    std::size_t index() const { return n_; }
    const Integer& prev() const { return prev_; }
    const Integer& cur() const { return cur_; }

    PacketData packet() const
    {
        PacketData d;
        d.n = n_;
        d.v_n = p_.v_at(n_);
        d.a_n = cur_;
        d.a_next = next_value();
        d.s_n = gcd(cur_, p_.s());
        const Integer modulus = p_.s() / d.s_n;
        d.m_n = (modulus == 1) ? Integer(0)
                               : mod_floor(-prev_ * mod_inverse(cur_ / d.s_n, modulus), modulus);
        d.xi_hat = Rational(d.s_n * d.v_n * p_.m() - p_.eps() * d.m_n, modulus);
        d.packet = cf_of_rational(d.xi_hat - Rational(p_.delta()), p_.eps() == 1 ? Parity::odd : Parity::even);
        return d;
    }

    void advance()
    {
        Integer next = next_value();
        prev_ = std::move(cur_);
        cur_ = std::move(next);
        ++n_;
    }

    /// (a_{n-1} mod s, a_n mod s, n mod 2).
    std::tuple<Integer, Integer, int> state() const
    {
        return {mod_floor(prev_, p_.s()), mod_floor(cur_, p_.s()), static_cast<int>(n_ % 2)};
    }

private:
    Integer next_value() const { return p_.v_at(n_) * p_.m() * cur_ + p_.eps() * prev_; }

    const PatternParams& p_;
    Integer prev_;
    Integer cur_;
    std::size_t n_ = 0;
};

} // namespace detail

inline PacketData packet(const PatternParams& p, std::size_t n)
{
    detail::PacketWalker w(p);
    while (w.index() < n)
        w.advance();
    return w.packet();
}

/// Packets 0 .. count-1.
inline std::vector<PacketData> packets(const PatternParams& p, std::size_t count)
{
    std::vector<PacketData> out;
    out.reserve(count);
    detail::PacketWalker w(p);
    for (std::size_t n = 0; n < count; ++n, w.advance())
        out.push_back(w.packet());
    return out;
}

/// Smallest l > 0 with (a_{l-1}, a_l, l mod 2) = (a_{-1}, a_0, 0) mod s; at most 2 s^2.
inline std::size_t state_period(const PatternParams& p)
{
    detail::PacketWalker w(p);
    const auto start = w.state();
    const Integer bound = 2 * p.s() * p.s();
    for (std::size_t l = 1; Integer(static_cast<unsigned long>(l)) <= bound; ++l) {
        w.advance();
        if (w.state() == start)
            return l;
    }
    throw std::logic_error("state_period: no period within 2 s^2 steps for " + p.str());
}

struct PatternCf {
    /// Purely periodic expansion of xi - delta: one packet period, concatenated.
    Cf cf;
    /// Packets of that period.
    std::vector<PacketData> packets;
    /// boundaries[j] = number of terms in P_0 .. P_{j-1}; boundaries.size() = packets.size() + 1.
    std::vector<std::size_t> boundaries;
    /// Period of the residue state (includes the parity of n).
    std::size_t state_period = 0;
};

inline PatternCf pattern_cf(const PatternParams& p)
{
    PatternCf out;
    out.state_period = state_period(p);
    std::vector<PacketData> all = packets(p, out.state_period);
    // The packet sequence may repeat faster than the state does (v = 1 makes parity irrelevant).
    std::size_t period = all.size();
    for (std::size_t l = 1; l < all.size(); ++l) {
        if (all.size() % l != 0)
            continue;
        bool ok = true;
        for (std::size_t i = l; i < all.size() && ok; ++i)
            ok = all[i].packet == all[i - l].packet;
        if (ok) {
            period = l;
            break;
        }
    }
    all.resize(period);
    std::vector<Integer> word;
    out.boundaries.push_back(0);
    for (const PacketData& d : all) {
        word.insert(word.end(), d.packet.head.begin(), d.packet.head.end());
        out.boundaries.push_back(word.size());
    }
    out.cf = Cf::periodic({}, std::move(word));
    out.packets = std::move(all);
    return out;
}

/// delta + [P_0, ..., P_{n-1}] for n = 1 .. count.
inline std::vector<Rational> boundary_convergents(const PatternParams& p, std::size_t count)
{
    std::vector<Rational> out;
    out.reserve(count);
    ConvergentStream s;
    detail::PacketWalker w(p);
    for (std::size_t n = 0; n < count; ++n, w.advance()) {
        for (const Integer& c : w.packet().packet.head)
            s.push(c);
        out.push_back(s.value() + Rational(p.delta()));
    }
    return out;
}

/// f_xi^n(inf) = s v_{n+1} a_{n+1} / a_n.
inline Rational xi_iterate(const PatternParams& p, std::size_t n)
{
    const std::vector<Integer> a = a_sequence(p, n + 1);
    return Rational(p.s() * p.v_at(n + 1) * a[n + 1], a[n]);
}

enum class Regime { simple, nonnegative, general };

inline const char* regime_name(Regime r)
{
    switch (r) {
    case Regime::simple:
        return "simple";
    case Regime::nonnegative:
        return "nonnegative";
    case Regime::general:
        return "general";
    }
    return "?";
}

struct RegimeReport {
    Regime regime;             // from the m thresholds
    Regime from_conjugate;     // from |conj(xi)| < 1/2, < 1
    bool consistent = false;
};

inline RegimeReport classify_regime(const PatternParams& p)
{
    RegimeReport r{};
    const Integer& m = p.m();
    const Integer& s = p.s();
    if (m >= 2 * s + p.delta())
        r.regime = Regime::simple;
    else if (m >= s + p.delta())
        r.regime = Regime::nonnegative;
    else
        r.regime = Regime::general;

    QuadSurd conj = p.xi_conjugate();
    if (conj.signum() < 0)
        conj = -conj;
    if (conj < Rational(1, 2))
        r.from_conjugate = Regime::simple;
    else if (conj < Rational(1))
        r.from_conjugate = Regime::nonnegative;
    else
        r.from_conjugate = Regime::general;
    r.consistent = r.regime == r.from_conjugate;
    return r;
}

/// The iterate f_xi^n(inf) is Pellian iff (n even or v = 1) and s | a_n.
inline bool is_pellian_iterate(const PatternParams& p, std::size_t n)
{
    if (n % 2 == 1 && p.v() != 1)
        return false;
    const std::vector<Integer> a = a_sequence(p, n);
    return a[n] % p.s() == 0;
}

struct FamilySample {
    Integer v, m;
    friend bool operator==(const FamilySample&, const FamilySample&) = default;
};

struct PacketFit {
    /// Leading term = alpha * (v_n m) + beta.
    Rational alpha;
    Rational beta;
    /// Terms after the leading one; identical for every sample.
    std::vector<Integer> constant_tail;
};

struct FamilyReport {
    Integer s;
    int eps = 1;
    Integer v_residue, m_residue;
    std::size_t period = 0;
    std::vector<PacketFit> packets;
    std::vector<FamilySample> samples;
};

/*
 * Fits every packet's leading term as a linear function of v_n m across
 * samples sharing (v, m) mod s. Two samples with different v_n m fix
 * alpha and beta; the remaining samples must match exactly, and all
 * non-leading terms must agree. Any mismatch throws std::logic_error.
 */
inline FamilyReport family_scan(const Integer& s, int eps, const Integer& v_residue, const Integer& m_residue,
                                const std::vector<FamilySample>& samples)
{
    if (samples.size() < 2)
        throw std::invalid_argument("family_scan: need at least two samples");
    if (s < 1)
        throw std::invalid_argument("family_scan: s must be positive");
    FamilyReport rep;
    rep.s = s;
    rep.eps = eps;
    rep.v_residue = mod_floor(v_residue, s);
    rep.m_residue = mod_floor(m_residue, s);
    rep.samples = samples;

    std::vector<std::vector<PacketData>> per_sample;
    for (const FamilySample& smp : samples) {
        if (mod_floor(smp.v, s) != rep.v_residue || mod_floor(smp.m, s) != rep.m_residue)
            throw std::invalid_argument("family_scan: sample (v=" + smp.v.get_str() + ", m=" + smp.m.get_str() +
                                        ") is outside the residue class");
        const PatternParams p(s, smp.v, smp.m, eps);
        const std::size_t l = state_period(p);
        if (rep.period == 0)
            rep.period = l;
        else if (rep.period != l)
            throw std::logic_error("family_scan: samples have different state periods");
        per_sample.push_back(packets(p, l));
    }

    for (std::size_t j = 0; j < rep.period; ++j) {
        PacketFit fit;
        const std::vector<Integer>& t0 = per_sample[0][j].packet.head;
        fit.constant_tail.assign(t0.begin() + 1, t0.end());
        std::vector<Rational> xs, lead;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const std::vector<Integer>& t = per_sample[i][j].packet.head;
            if (std::vector<Integer>(t.begin() + 1, t.end()) != fit.constant_tail)
                throw std::logic_error("family_scan: non-leading terms of packet " + std::to_string(j) +
                                       " differ between samples");
            xs.emplace_back(per_sample[i][j].v_n * samples[i].m);
            lead.emplace_back(t.front());
        }
        std::optional<std::size_t> other;
        for (std::size_t i = 1; i < xs.size() && !other; ++i)
            if (xs[i] != xs[0])
                other = i;
        if (other) {
            fit.alpha = (lead[*other] - lead[0]) / (xs[*other] - xs[0]);
            fit.beta = lead[0] - fit.alpha * xs[0];
        } else {
            fit.alpha = 0;
            fit.beta = lead[0];
        }
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (fit.alpha * xs[i] + fit.beta != lead[i])
                throw std::logic_error("family_scan: packet " + std::to_string(j) +
                                       " leading term is not linear in v_n m");
        rep.packets.push_back(std::move(fit));
    }
    return rep;
}

} // namespace lftcf
