#include "cli.hpp"

#include <lftcf/lftcf.hpp>
#include <lftcf/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lftcf::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!text.empty() && text.back() == sep)
        out.emplace_back();
    return out;
}

Integer integer_arg(const std::string& flag, const std::string& text)
{
    try {
        return parse_integer(text);
    } catch (const std::exception&) {
        throw UsageError(flag + ": '" + text + "' is not an integer");
    }
}

Rational rational_arg(const std::string& flag, const std::string& text)
{
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError(flag + ": '" + text + "' is not a rational P or P/Q");
    }
}

std::vector<Integer> integer_list(const std::string& flag, const std::string& text, std::size_t count)
{
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != count)
        throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated integers, got '" + text + "'");
    std::vector<Integer> out;
    for (const std::string& p : parts)
        out.push_back(integer_arg(flag, p));
    return out;
}

int eps_arg(const std::string& flag, const Integer& e)
{
    if (e != 1 && e != -1)
        throw std::invalid_argument(flag + " must be 1 or -1 (got " + e.get_str() + ")");
    return static_cast<int>(e.get_si());
}

Json terms_json(const std::vector<Integer>& terms)
{
    Json a = Json::array();
    for (const Integer& t : terms)
        a.push_back(t.get_str());
    return a;
}

Json params_json(const PatternParams& p)
{
    return Json{{"s", p.s().get_str()}, {"v", p.v().get_str()}, {"m", p.m().get_str()}, {"eps", p.eps()}};
}

std::string text(const Json& j)
{
    if (j.is_null())
        return "-";
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_boolean())
        return j.get<bool>() ? "yes" : "no";
    return j.dump();
}

/// Left-aligned columns separated by two spaces.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i)
        width[i] = header[i].size();
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            s += cells[i];
            if (i + 1 < cells.size())
                s += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out << s << '\n';
    };
    line(header);
    for (const auto& row : rows)
        line(row);
}

Json analyze(const std::string& k_text, const std::string& d_text, std::size_t iters)
{
    const OrbitSpec spec(integer_arg("--k", k_text), rational_arg("--d", d_text));
    const SeedVerdict seed = is_seed(spec);
    Json doc{{"command", "analyze"}, {"k", spec.k().get_str()}, {"d", spec.d().str()}, {"R", seed.R.str()},
             {"seed_integral", seed.integral}};
    doc["min_integral_power"] = seed.integral ? Json(min_integral_power(spec.map())) : Json();
    Json rows = Json::array();
    if (iters > 0)
        for (const IterateRecord& rec : classify_orbit(spec, iters)) {
            Json row{{"n", rec.n}, {"value", rec.value.str()}, {"pell_error", rec.pell_error.get_str()}};
            row["convergent_index"] = rec.convergent_index ? Json(*rec.convergent_index) : Json();
            row["semiconvergent"] = rec.semiconvergent
                                        ? Json{{"index", rec.semiconvergent->index}, {"b", rec.semiconvergent->b.get_str()}}
                                        : Json();
            row["pellian"] = rec.pellian;
            rows.push_back(row);
        }
    doc["iterates"] = rows;
    return doc;
}

void analyze_text(std::ostream& out, const Json& doc)
{
    out << "k = " << text(doc["k"]) << ", d = " << text(doc["d"]) << '\n';
    out << "R = " << text(doc["R"]) << (doc["seed_integral"].get<bool>() ? " (integral)" : " (not integral)") << '\n';
    if (!doc["min_integral_power"].is_null())
        out << "minimal integral power: " << text(doc["min_integral_power"]) << '\n';
    std::vector<std::vector<std::string>> rows;
    for (const Json& r : doc["iterates"]) {
        const Json& sc = r["semiconvergent"];
        rows.push_back({text(r["n"]), text(r["value"]), text(r["pell_error"]), text(r["convergent_index"]),
                        sc.is_null() ? "-" : text(sc["index"]) + " (b=" + text(sc["b"]) + ")", text(r["pellian"])});
    }
    print_table(out, {"n", "value", "pell_error", "convergent", "semiconvergent", "pellian"}, rows);
}

Json expand(const std::string& k_text, const std::string& xi_text)
{
    if (k_text.empty() == xi_text.empty())
        throw UsageError("expand: give exactly one of --k or --xi");
    Json doc{{"command", "expand"}};
    QuadSurd x = QuadSurd::sqrt_of(2);
    if (!k_text.empty()) {
        x = QuadSurd::sqrt_of(integer_arg("--k", k_text));
    } else {
        const std::vector<Integer> tu = integer_list("--xi", xi_text, 2);
        x = QuadInteger(tu[0], tu[1]).xi();
        doc["t"] = tu[0].get_str();
        doc["u"] = tu[1].get_str();
    }
    const Cf cf = cf_expand_surd(x);
    doc["xi"] = x.str();
    doc["head"] = terms_json(cf.head);
    doc["period"] = terms_json(cf.period);
    doc["period_length"] = cf.period.size();
    doc["cf"] = to_string(cf);
    return doc;
}

void expand_text(std::ostream& out, const Json& doc)
{
    out << "xi = " << text(doc["xi"]) << '\n';
    out << "head length " << doc["head"].size() << ", period length " << text(doc["period_length"]) << '\n';
    out << text(doc["cf"]) << '\n';
}

Json pattern(const PatternParams& p, std::optional<std::size_t> count)
{
    const PatternCf pc = pattern_cf(p);
    const RegimeReport regime = classify_regime(p);
    const std::size_t n = count.value_or(pc.packets.size());
    Json doc{{"command", "pattern"}, {"params", params_json(p)}, {"d", p.d().str()}, {"k", p.k().str()},
             {"delta", p.delta()}, {"xi", p.xi().str()}, {"regime", regime_name(regime.regime)},
             {"regime_from_conjugate", regime_name(regime.from_conjugate)}, {"state_period", pc.state_period},
             {"period", pc.packets.size()}};
    Json rows = Json::array();
    for (const PacketData& d : packets(p, n))
        rows.push_back(Json{{"n", d.n},
                            {"v_n", d.v_n.get_str()},
                            {"a_n", d.a_n.get_str()},
                            {"s_n", d.s_n.get_str()},
                            {"m_n", d.m_n.get_str()},
                            {"xi_hat", d.xi_hat.str()},
                            {"packet", to_string(d.packet)}});
    doc["packets"] = rows;
    doc["cf"] = to_string(pc.cf);
    // The simple expansion of xi, when zero fusion can produce it.
    if (regime.regime == Regime::general)
        doc["xi_cf"] = Json();
    else
        doc["xi_cf"] = to_string(canonical(shift_first_term(normalize_zeros(pc.cf), p.delta())));
    Json bc = Json::array();
    for (const Rational& r : boundary_convergents(p, n))
        bc.push_back(r.str());
    doc["boundary_convergents"] = bc;
    return doc;
}

void pattern_text(std::ostream& out, const Json& doc)
{
    const Json& pr = doc["params"];
    out << "s = " << text(pr["s"]) << ", v = " << text(pr["v"]) << ", m = " << text(pr["m"])
        << ", eps = " << text(pr["eps"]) << '\n';
    out << "d = " << text(doc["d"]) << ", k = " << text(doc["k"]) << ", xi = " << text(doc["xi"]) << '\n';
    out << "regime: " << text(doc["regime"]) << '\n';
    out << "period: " << text(doc["period"]) << " packets (state period " << text(doc["state_period"]) << ")\n";
    std::vector<std::vector<std::string>> rows;
    for (const Json& r : doc["packets"])
        rows.push_back({text(r["n"]), text(r["s_n"]), text(r["m_n"]), text(r["xi_hat"]), text(r["packet"])});
    print_table(out, {"n", "s_n", "m_n", "xi_hat", "packet"}, rows);
    out << "cf of xi - delta: " << text(doc["cf"]) << '\n';
    if (!doc["xi_cf"].is_null())
        out << "cf of xi: " << text(doc["xi_cf"]) << '\n';
    out << "boundary convergents:";
    for (const Json& b : doc["boundary_convergents"])
        out << ' ' << text(b);
    out << '\n';
}

Json family(const std::string& s_text, const std::string& eps_text, const std::string& vres, const std::string& mres,
            const std::string& samples_text)
{
    const Integer s = integer_arg("--s", s_text);
    const int eps = eps_arg("--eps", integer_arg("--eps", eps_text));
    std::vector<FamilySample> samples;
    for (const std::string& item : split(samples_text, ';')) {
        if (item.empty())
            continue;
        const std::vector<Integer> vm = integer_list("--samples", item, 2);
        samples.push_back({vm[0], vm[1]});
    }
    const FamilyReport rep = family_scan(s, eps, integer_arg("--vres", vres), integer_arg("--mres", mres), samples);
    Json doc{{"command", "family"},
             {"s", rep.s.get_str()},
             {"eps", rep.eps},
             {"v_residue", rep.v_residue.get_str()},
             {"m_residue", rep.m_residue.get_str()},
             {"period", rep.period}};
    Json pk = Json::array();
    for (const PacketFit& f : rep.packets)
        pk.push_back(Json{{"alpha", f.alpha.str()}, {"beta", f.beta.str()}, {"constant_tail", terms_json(f.constant_tail)}});
    doc["packets"] = pk;
    Json sm = Json::array();
    for (const FamilySample& x : rep.samples)
        sm.push_back(Json{{"v", x.v.get_str()}, {"m", x.m.get_str()}});
    doc["samples"] = sm;
    return doc;
}

void family_text(std::ostream& out, const Json& doc)
{
    out << "s = " << text(doc["s"]) << ", eps = " << text(doc["eps"]) << ", v = " << text(doc["v_residue"])
        << ", m = " << text(doc["m_residue"]) << " (mod s)\n";
    out << "period: " << text(doc["period"]) << " packets, " << doc["samples"].size() << " samples\n";
    std::vector<std::vector<std::string>> rows;
    std::size_t j = 0;
    for (const Json& f : doc["packets"]) {
        std::string tail;
        for (const Json& t : f["constant_tail"])
            tail += (tail.empty() ? "" : ", ") + text(t);
        rows.push_back({std::to_string(j++), text(f["alpha"]), text(f["beta"]), "[" + tail + "]"});
    }
    print_table(out, {"packet", "alpha", "beta", "tail"}, rows);
    out << "leading term = alpha * v_n m + beta\n";
}

Json pell(const std::string& k_text, const std::string& d_text, const std::string& params_text,
          const std::string& height_text)
{
    const bool by_kd = !k_text.empty() || !d_text.empty();
    if (by_kd == !params_text.empty())
        throw UsageError("pell: give either --k and --d, or --params");
    if (by_kd && (k_text.empty() || d_text.empty()))
        throw UsageError("pell: --k and --d go together");

    Json doc{{"command", "pell"}};
    std::optional<PatternParams> params;
    Integer k, d;
    if (by_kd) {
        k = integer_arg("--k", k_text);
        d = integer_arg("--d", d_text);
        params = parametrize(k, d);
        doc["k"] = k.get_str();
        doc["d"] = d.get_str();
    } else {
        const std::vector<Integer> v = integer_list("--params", params_text, 4);
        params.emplace(v[0], v[1], v[2], eps_arg("--params eps", v[3]));
    }
    PellianLimits lim;
    if (!height_text.empty()) {
        lim.height = integer_arg("--height", height_text);
        if (lim.height < 1)
            throw std::invalid_argument("--height must be positive");
    }
    const PellReport rep = orbit_pell_coverage(*params, lim);

    doc["params"] = params_json(*params);
    doc["t"] = rep.t.get_str();
    doc["u"] = rep.u.get_str();
    doc["xi"] = params->xi().str();
    doc["period_L"] = rep.period_L;
    doc["shift"] = rep.shift.get_str();
    doc["fundamental_unit"] = Json{{"p", rep.unit_p.get_str()}, {"q", rep.unit_q.get_str()},
                                   {"value", rep.fundamental_unit->str()}};
    std::map<std::size_t, std::size_t> hit;
    for (const auto& [pos, n] : rep.orbit_hits)
        hit[pos] = n;
    Json list = Json::array();
    for (std::size_t i = 0; i < rep.pellians.size(); ++i) {
        const PellianFraction& f = rep.pellians[i];
        Json row{{"index", i + 1}, {"p", f.p.get_str()}, {"q", f.q.get_str()}, {"value", f.value().str()},
                 {"norm", f.norm_sign}};
        row["orbit_n"] = hit.count(i + 1) ? Json(hit[i + 1]) : Json();
        list.push_back(row);
    }
    doc["pellians"] = list;
    doc["exception"] = exception_name(rep.exception);
    doc["exception_s"] = rep.exception == ExceptionKind::none ? Json() : Json(rep.exception_s.get_str());
    doc["covers_all"] = rep.covers_all;
    doc["predicted_covers_all"] = rep.predicted_covers_all;
    if (by_kd && k < d * d) {
        doc["negative_pell"] = Json{{"verdict", verdict_name(negative_pell_verdict(k, d))},
                                    {"reference_solvable", negative_pell_solvable(k)}};
    } else {
        doc["negative_pell"] = Json();
    }
    return doc;
}

void pell_text(std::ostream& out, const Json& doc)
{
    const Json& pr = doc["params"];
    if (doc.contains("k"))
        out << "k = " << text(doc["k"]) << ", d = " << text(doc["d"]) << '\n';
    out << "s = " << text(pr["s"]) << ", v = " << text(pr["v"]) << ", m = " << text(pr["m"])
        << ", eps = " << text(pr["eps"]) << '\n';
    out << "xi = " << text(doc["xi"]) << ", xi^2 = " << text(doc["t"]) << " xi + (" << text(doc["u"]) << ")\n";
    out << "period L = " << text(doc["period_L"]) << ", shift = " << text(doc["shift"]) << '\n';
    out << "fundamental unit: " << text(doc["fundamental_unit"]["value"]) << '\n';
    std::vector<std::vector<std::string>> rows;
    for (const Json& r : doc["pellians"])
        rows.push_back({text(r["index"]), text(r["value"]), r["norm"].get<int>() > 0 ? "+1" : "-1", text(r["orbit_n"])});
    print_table(out, {"#", "pellian", "norm", "orbit n"}, rows);
    out << "exception: " << text(doc["exception"]);
    if (!doc["exception_s"].is_null())
        out << " (s = " << text(doc["exception_s"]) << ")";
    out << '\n';
    out << "orbit covers all: " << text(doc["covers_all"]) << " (predicted " << text(doc["predicted_covers_all"])
        << ")\n";
    if (!doc["negative_pell"].is_null())
        out << "negative Pell: " << text(doc["negative_pell"]["verdict"]) << " (reference solvable: "
            << text(doc["negative_pell"]["reference_solvable"]) << ")\n";
}

Json verify_cmd(const std::string& suite, std::size_t limit)
{
    const std::vector<std::string> names = verify::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::string all;
        for (const std::string& n : names)
            all += (all.empty() ? "" : ", ") + n;
        throw UsageError("verify: unknown suite '" + suite + "' (one of " + all + ")");
    }
    Json doc{{"command", "verify"}, {"suite", suite}, {"limit", limit}};
    Json res = Json::array();
    bool ok = true;
    for (const verify::SuiteResult& r : verify::run_suite(suite, limit)) {
        ok = ok && r.passed();
        res.push_back(Json{{"name", r.name},
                           {"checked", r.checked},
                           {"failed", r.failed},
                           {"passed", r.passed()},
                           {"failures", r.failures}});
    }
    doc["results"] = res;
    doc["passed"] = ok;
    return doc;
}

void verify_text(std::ostream& out, const Json& doc)
{
    for (const Json& r : doc["results"]) {
        out << text(r["name"]) << ": " << text(r["checked"]) << " checks, " << text(r["failed"]) << " failed, "
            << (r["passed"].get<bool>() ? "PASS" : "FAIL") << '\n';
        for (const Json& f : r["failures"])
            out << "  " << text(f) << '\n';
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Orbits of x -> (d x + k)/(x + d), packet continued fractions and Pellian fractions", "lftcf"};
    app.require_subcommand(1);
    bool json = false;

    std::string k, d, xi, s, v, m, eps, vres, mres, samples, params, height, suite;
    std::size_t iters = 10, limit = 0;
    std::optional<std::size_t> npackets;

    CLI::App* a = app.add_subcommand("analyze", "classify the orbit of f_d from infinity");
    a->add_option("--k", k, "nonsquare positive integer")->required();
    a->add_option("--d", d, "positive rational P or P/Q")->required();
    a->add_option("--iters", iters, "number of iterates")->capture_default_str();
    a->add_flag("--json", json, "emit JSON");

    CLI::App* e = app.add_subcommand("expand", "reference continued fraction of sqrt(k) or of a quadratic integer");
    e->add_option("--k", k, "expand sqrt(k)");
    e->add_option("--xi", xi, "T,U: expand the root of x^2 = T x + U exceeding its conjugate in size");
    e->add_flag("--json", json, "emit JSON");

    CLI::App* p = app.add_subcommand("pattern", "packet continued fraction for parameters (s, v, m, eps)");
    p->add_option("--s", s)->required();
    p->add_option("--v", v)->required();
    p->add_option("--m", m)->required();
    p->add_option("--eps", eps, "1 or -1")->required();
    p->add_option("--packets", npackets, "packets to list (default: one period)");
    p->add_flag("--json", json, "emit JSON");

    CLI::App* f = app.add_subcommand("family", "linear fit of packet-leading terms across a residue class");
    f->add_option("--s", s)->required();
    f->add_option("--eps", eps)->required();
    f->add_option("--vres", vres, "v mod s")->required();
    f->add_option("--mres", mres, "m mod s")->required();
    f->add_option("--samples", samples, "\"v1,m1;v2,m2;...\"")->required();
    f->add_flag("--json", json, "emit JSON");

    CLI::App* pl = app.add_subcommand("pell", "Pellian fractions against the orbit");
    pl->add_option("--k", k);
    pl->add_option("--d", d);
    pl->add_option("--params", params, "S,V,M,E");
    pl->add_option("--height", height, "enumerate Pellian fractions up to this denominator");
    pl->add_flag("--json", json, "emit JSON");

    CLI::App* vf = app.add_subcommand("verify", "run a compiled-in acceptance suite");
    vf->add_option("--suite", suite)->required();
    vf->add_option("--limit", limit, "cases per suite, 0 = full grid")->capture_default_str();
    vf->add_flag("--json", json, "emit JSON");

    std::vector<const char*> argv{"lftcf"};
    for (const std::string& x : args)
        argv.push_back(x.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex, out, err);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex, out, err);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex, out, err);
        return 2;
    }

    try {
        Json doc;
        void (*render)(std::ostream&, const Json&) = nullptr;
        if (a->parsed()) {
            doc = analyze(k, d, iters);
            render = analyze_text;
        } else if (e->parsed()) {
            doc = expand(k, xi);
            render = expand_text;
        } else if (p->parsed()) {
            const PatternParams pp(integer_arg("--s", s), integer_arg("--v", v), integer_arg("--m", m),
                                   eps_arg("--eps", integer_arg("--eps", eps)));
            doc = pattern(pp, npackets);
            render = pattern_text;
        } else if (f->parsed()) {
            doc = family(s, eps, vres, mres, samples);
            render = family_text;
        } else if (pl->parsed()) {
            doc = pell(k, d, params, height);
            render = pell_text;
        } else {
            doc = verify_cmd(suite, limit);
            render = verify_text;
        }
        if (json)
            out << doc.dump(2) << '\n';
        else
            render(out, doc);
        if (doc["command"] == "verify" && !doc["passed"].get<bool>())
            return 1;
        return 0;
    } catch (const UsageError& ex) {
        err << "usage error: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
}

} // namespace lftcf::cli
