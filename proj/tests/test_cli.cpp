#include "cli.hpp"

#include <lftcf/lftcf.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace lftcf;
using Json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args)
{
    args.push_back("--json");
    const Outcome r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out);
}

} // namespace

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"expand", "--k", "7"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"expand", "--k", "seven"}).code, 2);
    EXPECT_EQ(run({"analyze", "--k", "7"}).code, 2);          // --d missing
    EXPECT_EQ(run({"expand", "--k", "7", "--xi", "1,1"}).code, 2); // both given
    EXPECT_EQ(run({"expand", "--k", "9"}).code, 1);           // square radicand
    EXPECT_EQ(run({"pattern", "--s", "1", "--v", "1", "--m", "2", "--eps", "-1"}).code, 1);
    EXPECT_EQ(run({"pell", "--k", "19", "--d", "4"}).code, 1); // R not integral
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);    // unknown suite name
    const Outcome bad = run({"expand", "--k", "9"});
    EXPECT_FALSE(bad.err.empty());
    EXPECT_TRUE(bad.out.empty());
}

TEST(Cli, ExpandFixture)
{
    const Json doc = run_json({"expand", "--k", "100000003"});
    EXPECT_EQ(doc["head"], Json::array({"10000"}));
    const long printed[] = {6666, 1, 2, 2221, 1, 8, 740, 1, 1, 1, 2, 2, 1, 246, 4, 1, 3, 4, 82};
    for (std::size_t i = 0; i < 19; ++i)
        EXPECT_EQ(doc["period"][i], std::to_string(printed[i])) << i;
    EXPECT_EQ(doc["period_length"].get<std::size_t>(), doc["period"].size());
    // the text form parses back to the same expansion
    const Cf cf = parse_cf(doc["cf"].get<std::string>());
    EXPECT_EQ(cf, cf_expand_surd(QuadSurd::sqrt_of(Integer("100000003"))));
}

TEST(Cli, ExpandQuadraticInteger)
{
    const Json doc = run_json({"expand", "--xi", "1,1"});
    EXPECT_EQ(doc["t"], "1");
    EXPECT_EQ(doc["u"], "1");
    EXPECT_TRUE(same_sequence(parse_cf(doc["cf"].get<std::string>()), Cf::periodic({}, {Integer(1)})));
}

TEST(Cli, AnalyzeExample)
{
    const Json doc = run_json({"analyze", "--k", "5", "--d", "3", "--iters", "3"});
    EXPECT_EQ(doc["R"], "-9");
    EXPECT_EQ(doc["seed_integral"], true);
    ASSERT_EQ(doc["iterates"].size(), 3u);
    EXPECT_EQ(doc["iterates"][0]["value"], "3");
    EXPECT_TRUE(doc["iterates"][0]["convergent_index"].is_null());
    EXPECT_EQ(doc["iterates"][0]["semiconvergent"]["index"], 1);
    EXPECT_EQ(doc["iterates"][2]["value"], "9/4");
    EXPECT_EQ(doc["iterates"][2]["convergent_index"], 2);
    EXPECT_EQ(doc["iterates"][2]["pellian"], true);
    EXPECT_EQ(doc["min_integral_power"], 3);
}

TEST(Cli, AnalyzeSqrtTwo)
{
    const Json doc = run_json({"analyze", "--k", "2", "--d", "1", "--iters", "3"});
    const char* want[] = {"1", "3/2", "7/5"};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(doc["iterates"][i]["value"], want[i]);
        EXPECT_EQ(doc["iterates"][i]["pellian"], true);
    }
}

TEST(Cli, AnalyzeNonIntegralSeed)
{
    const Json doc = run_json({"analyze", "--k", "19", "--d", "4", "--iters", "2"});
    EXPECT_EQ(doc["R"], "64/3");
    EXPECT_EQ(doc["seed_integral"], false);
    EXPECT_TRUE(doc["min_integral_power"].is_null());
}

TEST(Cli, PatternExample)
{
    const Json doc = run_json({"pattern", "--s", "2", "--v", "1", "--m", "5", "--eps", "1"});
    EXPECT_EQ(doc["k"], "29");
    EXPECT_EQ(doc["d"], "5");
    EXPECT_EQ(doc["regime"], "simple");
    EXPECT_EQ(doc["regime_from_conjugate"], "simple");
    EXPECT_EQ(doc["state_period"], 6);
    EXPECT_EQ(doc["period"], 3); // packets per period
    EXPECT_EQ(parse_cf(doc["cf"].get<std::string>()), Cf::periodic({}, {10, 2, 1, 1, 2}));
    EXPECT_EQ(doc["packets"].size(), 3u);
    EXPECT_EQ(doc["boundary_convergents"][1], "52/5");
}

TEST(Cli, PatternAgreesWithExpandInTheSimpleRegime)
{
    for (int s = 1; s <= 3; ++s)
        for (int m = 2 * s; m <= 2 * s + 4; ++m)
            for (int eps : {1, -1}) {
                if (eps == -1 && m < 2 * s + 1)
                    continue;
                const Json pat = run_json({"pattern", "--s", std::to_string(s), "--v", "1", "--m", std::to_string(m),
                                           "--eps", std::to_string(eps)});
                ASSERT_EQ(pat["regime"], "simple");
                const PatternParams p(s, 1, m, eps);
                const Json exp = run_json({"expand", "--xi", p.t().get_str() + "," + p.u().get_str()});
                EXPECT_TRUE(same_sequence(parse_cf(pat["xi_cf"].get<std::string>()),
                                          parse_cf(exp["cf"].get<std::string>())))
                    << p.str();
            }
    const Json general = run_json({"pattern", "--s", "3", "--v", "2", "--m", "2", "--eps", "1"});
    EXPECT_EQ(general["regime"], "general");
    EXPECT_TRUE(general["xi_cf"].is_null());
}

TEST(Cli, FamilyExample)
{
    const Json doc = run_json({"family", "--s", "1", "--eps", "1", "--vres", "0", "--mres", "0", "--samples",
                               "1,2;2,3;3,1"});
    EXPECT_EQ(doc["period"], 2);
    ASSERT_EQ(doc["packets"].size(), 2u);
    EXPECT_EQ(doc["packets"][0]["alpha"], "1");
    EXPECT_EQ(doc["packets"][0]["beta"], "0");
    EXPECT_EQ(run({"family", "--s", "2", "--eps", "1", "--vres", "1", "--mres", "1", "--samples", "1,5;x"}).code, 2);
}

TEST(Cli, PellExample)
{
    const Json doc = run_json({"pell", "--k", "5", "--d", "3", "--height", "100000"});
    EXPECT_EQ(doc["exception"], "golden");
    EXPECT_EQ(doc["covers_all"], false);
    EXPECT_EQ(doc["predicted_covers_all"], false);
    EXPECT_EQ(doc["pellians"][0]["p"], "5");
    EXPECT_EQ(doc["pellians"][0]["q"], "1");
    EXPECT_EQ(doc["negative_pell"]["verdict"], "undetermined");
    EXPECT_EQ(doc["negative_pell"]["reference_solvable"], true);

    const Json plain = run_json({"pell", "--params", "2,1,5,1"});
    EXPECT_EQ(plain["t"], "10");
    EXPECT_EQ(plain["u"], "4");
    EXPECT_EQ(plain["exception"], "none");
    EXPECT_EQ(plain["covers_all"], true);
    EXPECT_TRUE(plain["negative_pell"].is_null()); // R > 0
}

TEST(Cli, VerifyWithLimit)
{
    const Json doc = run_json({"verify", "--suite", "unit", "--limit", "10"});
    EXPECT_EQ(doc["suite"], "unit");
    EXPECT_EQ(doc["passed"], true);
    ASSERT_EQ(doc["results"].size(), 1u);
    const Outcome text = run({"verify", "--suite", "fixture"});
    EXPECT_EQ(text.code, 0);
    EXPECT_NE(text.out.find("PASS"), std::string::npos) << text.out;
}

TEST(Cli, OutputIsDeterministic)
{
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"pattern", "--s", "3", "--v", "1", "--m", "4", "--eps", "1", "--json"},
          std::vector<std::string>{"pell", "--k", "2", "--d", "2", "--json"},
          std::vector<std::string>{"analyze", "--k", "13", "--d", "4"}}) {
        const Outcome a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, TextOutputMentionsKeyValues)
{
    const Outcome r = run({"expand", "--k", "7"});
    EXPECT_NE(r.out.find("[2; (1, 1, 1, 4)]"), std::string::npos) << r.out;
}
