#include "remile/error.hpp"
#include "remile/report.hpp"
#include "remile/synthgen.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace remile;

namespace {

Corpus load(const synth::GeneratedCorpus& g, Canonicalizer& names)
{
    auto p = parse_publications(g.publications_tsv, names);
    Diagnostics d;
    auto l = parse_citations(g.citations_tsv, p, LinkPolicy::Strict, d);
    return build_corpus(std::move(p), std::move(l), std::nullopt, d);
}

// Dip before 2004, strict growth afterwards, first Review in 1998.
synth::TrajectorySpec prescribed_country()
{
    synth::TrajectorySpec s;
    s.country = "Testland";
    for (Year y = 1995; y <= 2008; ++y)
        s.base_pubs[y] = 2;
    s.citing_counts = {{1995, 3}, {1996, 5}, {1997, 4}, {1998, 6}, {1999, 3}, {2000, 5}, {2001, 6},
                       {2002, 8}, {2003, 4}, {2004, 10}, {2005, 12}, {2006, 14}, {2007, 15}, {2008, 17}};
    s.review_year = 1998;
    return s;
}

MilestoneRow row(std::string country, std::string group, std::optional<Year> iv, std::optional<Year> review,
                 bool preliminary = false)
{
    MilestoneRow r{std::move(country), std::move(group), std::nullopt, std::nullopt};
    if (iv)
        r.iv = Milestone{r.country, MilestoneKind::ImpactVitality, *iv, preliminary, 2008 - *iv + 1};
    if (review)
        r.review = Milestone{r.country, MilestoneKind::Review, *review, false, 0};
    return r;
}

MilestoneTable sample_table()
{
    MilestoneTable t;
    const Year ivs[] = {1983, 1987, 1989, 1992, 1997, 2001, 2001, 2002, 2003, 2004, 2005};
    const std::optional<Year> reviews[] = {1984, 1982, 1986, 1981, 1994, 1999, 2002, 2003, std::nullopt, 2005, std::nullopt};
    for (int i = 0; i < 11; ++i)
        t.rows.push_back(row("C" + std::to_string(i), i < 4 ? "A" : "B", ivs[i], reviews[i], i == 10));
    return t;
}

std::vector<EconomicRecord> sample_econ()
{
    std::vector<EconomicRecord> e;
    for (int i = 0; i < 11; ++i)
        e.push_back({"C" + std::to_string(i), 2000.0 - 150 * i + (i % 3) * 40, 50.0 + 37 * ((i * 7) % 11),
                     2.0 + (i % 4), 3.0 + 0.3 * ((i * 5) % 11)});
    return e;
}

bool same(const std::vector<AnalysisResult>& a, const std::vector<AnalysisResult>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name || a[i].n != b[i].n || a[i].result.has_value() != b[i].result.has_value())
            return false;
        if (a[i].result && (a[i].result->r != b[i].result->r || a[i].result->p_one != b[i].result->p_one))
            return false;
    }
    return true;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("groups config keeps document order and canonicalizes")
{
    auto names = Canonicalizer::with_defaults();
    const auto g = parse_groups(R"({"N-11": ["Korea, Republic of", "Mexico"], "BRIC": ["china"]})", names);
    REQUIRE(g.size() == 2);
    CHECK(g[0].name == "N-11");
    CHECK(g[0].members == std::vector<std::string>{"South Korea", "Mexico"});
    CHECK(g[1].members == std::vector<std::string>{"China"});

    CHECK_THROWS_AS(parse_groups(R"({"A": []})", names), ConfigError);
    CHECK_THROWS_AS(parse_groups(R"({"A": ["China"], "B": ["China"]})", names), ConfigError);
    CHECK_THROWS_AS(parse_groups("[1,2]", names), ConfigError);
    CHECK_THROWS_AS(parse_groups("{", names), ConfigError);

    auto again = parse_groups(groups_to_json(g), names);
    CHECK(again.size() == 2);
    CHECK(again[0].members == g[0].members);
}

TEST_CASE("default groups")
{
    const auto g = default_groups();
    REQUIRE(g.size() == 2);
    CHECK(g[0].members == std::vector<std::string>{"Brazil", "Russia", "India", "China"});
    CHECK(g[1].members.size() == 11);
    CHECK(std::find(g[1].members.begin(), g[1].members.end(), "Mexico") != g[1].members.end());
}

TEST_CASE("economics parsing")
{
    auto names = Canonicalizer::with_defaults();
    const auto e = parse_economics("country\tgdp\tpopulation\tgdp_per_capita\tges\n"
                                   "Mexico\t8.66e11\t1.04e8\t8326.9\t5.2\n"
                                   "Viet Nam\t\t8.4e7\t\t0\n",
                                   names);
    REQUIRE(e.size() == 2);
    CHECK(*e[0].gdp == 8.66e11);
    CHECK(e[1].country == "Vietnam");
    CHECK_FALSE(e[1].gdp);
    CHECK(*e[1].ges == 0.0);

    const auto no_ges = parse_economics("country\tgdp\nMexico\t1\n", names);
    CHECK_FALSE(no_ges[0].ges);

    CHECK_THROWS_AS(parse_economics("gdp\n1\n", names), DataError);
    CHECK_THROWS_WITH_AS(parse_economics("country\tgdp\nMexico\t-1\n", names), doctest::Contains("line 2"),
                         DataError);
    CHECK_THROWS_AS(parse_economics("country\tges\nMexico\t-0.5\n", names), DataError);
    CHECK_THROWS_AS(parse_economics("country\tgdp\nMexico\tabc\n", names), DataError);
    CHECK_THROWS_AS(parse_economics("country\tgdp\nMexico\t1\nMexico\t2\n", names), DataError);
}

TEST_CASE("milestone table on a prescribed trajectory")
{
    auto names = Canonicalizer::with_defaults();
    auto nomad = synth::TrajectorySpec{"Nomadia", {{2000, 1}}, {{2001, 1}}, std::nullopt};
    const auto corpus = load(synth::generate({prescribed_country(), nomad}, 42), names);
    Diagnostics diag;
    const auto t = milestone_table(corpus, {{"G", {"Testland", "Nomadia", "Absentia"}}}, {}, diag);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].iv->year == 2004);
    CHECK(t.rows[0].review->year == 1998);
    CHECK(t.rows[0].iv->run_length == 5);
    CHECK_FALSE(t.rows[1].review);
    CHECK_FALSE(t.rows[2].iv);
    CHECK_FALSE(t.rows[2].review);
    REQUIRE(diag.messages().size() == 1);
    CHECK(diag.messages()[0].message.find("Absentia") != std::string::npos);

    std::ostringstream out;
    write_milestones_tsv(out, t);
    CHECK(out.str() == "country\tgroup\tiv_milestone\tiv_preliminary\tiv_run_length\treview_milestone\n"
                       "Testland\tG\t2004\tfalse\t5\t1998\n"
                       "Nomadia\tG\t\t\t\t\n"
                       "Absentia\tG\t\t\t\t\n");
}

TEST_CASE("correlation suite runs nine analyses with pairwise N")
{
    const auto res = correlation_suite(sample_table(), sample_econ());
    REQUIRE(res.size() == 9);
    CHECK(res[0].name == "iv_milestone~gdp");
    CHECK(res[4].name == "review_milestone~gdp");
    CHECK(res[8].name == "iv_milestone~review_milestone");
    for (int i = 0; i < 4; ++i)
        CHECK(res[i].n == 11);
    for (int i = 4; i < 9; ++i)
        CHECK(res[i].n == 9);
    REQUIRE(res[0].result);
    CHECK(res[0].result->r < 0);
    CHECK(res[8].result->r > 0);

    const auto excl = correlation_suite(sample_table(), sample_econ(), false);
    CHECK(excl[0].n == 10);
}

TEST_CASE("identical milestone sequences correlate perfectly")
{
    MilestoneTable t;
    for (Year y : {1990, 1994, 1997, 2003})
        t.rows.push_back(row("C" + std::to_string(y), "A", y, y));
    const auto res = correlation_suite(t, {});
    REQUIRE(res[8].result);
    CHECK(res[8].result->r == 1.0);
    CHECK(res[8].result->degenerate);
    CHECK_FALSE(res[0].result);
    CHECK(res[0].note.find("insufficient") == 0);
}

TEST_CASE("missing ges column leaves other analyses intact")
{
    auto econ = sample_econ();
    for (auto& e : econ)
        e.ges.reset();
    const auto res = correlation_suite(sample_table(), econ);
    CHECK_FALSE(res[3].result);
    CHECK_FALSE(res[7].result);
    CHECK(res[0].result);
    CHECK(res[6].result);
    CHECK(res[8].result);
}

TEST_CASE("property: suite ignores row order and countries without milestones")
{
    const auto base = correlation_suite(sample_table(), sample_econ());
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        auto t = sample_table();
        auto e = sample_econ();
        std::shuffle(t.rows.begin(), t.rows.end(), rng);
        std::shuffle(e.begin(), e.end(), rng);
        CHECK(same(correlation_suite(t, e), base));
        t.rows.push_back(row("Empty" + std::to_string(trial), "B", std::nullopt, std::nullopt));
        e.push_back({"Empty" + std::to_string(trial), 10.0, 10.0, 10.0, 10.0});
        CHECK(same(correlation_suite(t, e), base));
    }
}

TEST_CASE("figure data splits points and unreached countries")
{
    const auto t = sample_table();
    const auto fig = figure_data(t);
    CHECK(fig.reference_year == 2001);
    CHECK(fig.points.size() + fig.unreached.size() == t.rows.size());
    CHECK(fig.unreached.size() == 2);
    CHECK(fig.groups == std::vector<std::string>{"A", "B"});
    for (const auto& p : fig.points)
        if (p.group == "A")
            CHECK((p.iv_year < 2001 && p.review_year < 2001));

    const auto moved = figure_data(t, 1990);
    CHECK(moved.reference_year == 1990);
    REQUIRE(moved.points.size() == fig.points.size());
    for (std::size_t i = 0; i < fig.points.size(); ++i)
        CHECK(moved.points[i].iv_year == fig.points[i].iv_year);

    MilestoneTable single;
    single.rows.push_back(row("Solo", "A", 2000, std::nullopt));
    const auto s = figure_data(single);
    CHECK(s.points.empty());
    REQUIRE(s.unreached.size() == 1);
    CHECK(*s.unreached[0].iv_year == 2000);

    const auto json = figure_to_json(fig);
    CHECK(json.find("\"style\": \"dashed\"") != std::string::npos);
    CHECK(json.find("\"unreached\"") != std::string::npos);
}

TEST_CASE("svg rendering")
{
    auto count = [](const std::string& s, const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1))
            ++n;
        return n;
    };

    const auto empty = render_figure_svg(FigureData{});
    CHECK(empty.rfind("<?xml", 0) == 0);
    CHECK(empty.find("</svg>") != std::string::npos);
    CHECK(empty.find("class=\"axes\"") != std::string::npos);
    CHECK(count(empty, "class=\"marker") == 0);

    FigureData two;
    two.groups = {"A", "B"};
    two.points = {{"P", "A", 1990, 1985, false}, {"Q", "B", 2004, 2006, true}};
    const auto svg = render_figure_svg(two);
    CHECK(count(svg, "class=\"marker") == 2);
    CHECK(count(svg, "class=\"marker preliminary\"") == 1);
    CHECK(svg.find("class=\"marker preliminary\" x=") != std::string::npos);
    CHECK(svg.find("stroke-dasharray=\"6,4\"") != std::string::npos);
    CHECK(svg == render_figure_svg(two));

    FigureData esc;
    esc.groups = {"A&B"};
    esc.points = {{"<X>", "A&B", 1990, 1990, false}};
    const auto e = render_figure_svg(esc);
    CHECK(e.find("&lt;X&gt;") != std::string::npos);
    CHECK(e.find("<X>") == std::string::npos);
}

TEST_CASE("correlations TSV layout")
{
    std::vector<AnalysisResult> res;
    res.push_back({"iv_milestone~gdp", 3, stats::CorrelationResult{3, 0.5, 0.57735026918962573, 1, 0.33, 0.66, false}, {}});
    res.push_back({"iv_milestone~ges", 2, std::nullopt, "insufficient"});
    std::ostringstream out;
    write_correlations_tsv(out, res);
    CHECK(out.str() == "analysis\tn\tr\tt\tdf\tp_one\tp_two\n"
                       "iv_milestone~gdp\t3\t0.5\t0.5773502691896257\t1\t0.33\t0.66\n"
                       "iv_milestone~ges\t2\t\t\t\t\t\n");
}

} // TEST_SUITE
