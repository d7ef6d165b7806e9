#include "remile/error.hpp"
#include "remile/indicators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace remile;

namespace {

Corpus corpus_of(const std::string& pubs, const std::string& cites, std::optional<Year> end = {})
{
    auto names = Canonicalizer::with_defaults();
    auto p = parse_publications("pub_id\tyear\tjournal\tdoc_type\tcountries\n" + pubs, names);
    Diagnostics d;
    auto l = parse_citations("citing_id\tcited_id\n" + cites, p, LinkPolicy::Lenient, d);
    return build_corpus(std::move(p), std::move(l), end, d);
}

VitalityProfile profile_of(Year first, const std::vector<std::optional<double>>& ivs)
{
    VitalityProfile p;
    p.country = "X";
    p.first_year = first;
    p.last_year = first + static_cast<Year>(ivs.size()) - 1;
    for (std::size_t i = 0; i < ivs.size(); ++i)
        p.values[first + static_cast<Year>(i)] = ivs[i];
    return p;
}

} // namespace

TEST_SUITE("indicators") {

TEST_CASE("citing series counts distinct citers per year")
{
    const auto c = corpus_of("P1\t2000\tNature\tArticle\tChina\n"
                             "P2\t2000\tScience\tLetter\tChina\n"
                             "C1\t2001\tX\tArticle\t\n"
                             "C2\t2001\tX\tArticle\t\n"
                             "C3\t2002\tX\tArticle\t\n",
                             "C1\tP1\nC2\tP1\nC3\tP1\nC1\tP2\n");
    const auto s = citing_series(c, "China");
    CHECK(s.counts == std::map<Year, long>{{2001, 2}, {2002, 1}});
    CHECK(s.first_year == 2000);
    CHECK(s.last_year == 2002);
    CHECK(s.at(2000) == 0);
}

TEST_CASE("citing series for countries without selected papers is all zero")
{
    const auto c = corpus_of("P1\t2000\tNature\tArticle\tChina\n"
                             "P2\t2000\tNature\tEditorial\tMexico\n"
                             "C1\t2001\tX\tArticle\t\n",
                             "C1\tP1\nC1\tP2\n");
    const auto s = citing_series(c, "Mexico");
    CHECK(s.counts.empty());
    CHECK(s.first_year == s.last_year);
    CHECK(impact_vitality(s).values.empty());
    CHECK_FALSE(impact_vitality_milestone(impact_vitality(s)));
}

TEST_CASE("citers after the observation end and filtered citing types are excluded")
{
    const std::string pubs = "P1\t2000\tNature\tArticle\tChina\n"
                             "C1\t2004\tX\tArticle\t\n"
                             "C2\t2005\tX\tEditorial\t\n";
    const auto c = corpus_of(pubs, "C1\tP1\nC2\tP1\n", 2004);
    CHECK(citing_series(c, "China").counts == std::map<Year, long>{{2004, 1}});

    const auto full = corpus_of(pubs, "C1\tP1\nC2\tP1\n");
    Selection sel;
    sel.citing_doc_types = std::set<DocType>{DocType::article()};
    CHECK(citing_series(full, "China", sel).counts == std::map<Year, long>{{2004, 1}});
    CHECK(citing_series(full, "China").counts == std::map<Year, long>{{2004, 1}, {2005, 1}});
}

TEST_CASE("vitality window validation")
{
    CHECK_THROWS_AS(VitalityWindow(1), ConfigError);
    CHECK_THROWS_AS(VitalityWindow(std::vector<double>{1.0, 1.0, 0.5}), ConfigError);
    CHECK_THROWS_AS(VitalityWindow(std::vector<double>{1.0, 0.5, 0.0}), ConfigError);
    CHECK_THROWS_AS(VitalityWindow(std::vector<double>{0.5, 1.0}), ConfigError);
    const VitalityWindow w;
    CHECK(w.length() == 3);
    CHECK(w.weights() == std::vector<double>{1.0, 0.5, 1.0 / 3});
}

TEST_CASE("worked impact vitality values")
{
    const VitalityWindow w;
    CHECK(*vitality_value({4, 4, 4}, w) == 1.0);
    // Weighted mean (2/3 + 2 + 6) / (11/6) = 52/11 over plain mean 4.
    CHECK(*vitality_value({2, 4, 6}, w) == doctest::Approx(13.0 / 11).epsilon(1e-14));
    // (2 + 2 + 2) / (11/6) = 36/11 over 4.
    CHECK(*vitality_value({6, 4, 2}, w) == doctest::Approx(9.0 / 11).epsilon(1e-14));
    CHECK_FALSE(vitality_value({0, 0, 0}, w));
    CHECK_THROWS_AS(vitality_value({1, 2}, w), ConfigError);
}

TEST_CASE("profile covers every year with a full window")
{
    CitingSeries s{"X", {{2000, 2}, {2001, 4}, {2002, 6}, {2004, 3}}, 2000, 2007};
    const auto p = impact_vitality(s);
    CHECK(p.values.size() == 6);
    CHECK(p.values.begin()->first == 2002);
    CHECK(*p.values.at(2002) == doctest::Approx(13.0 / 11));
    CHECK(p.values.at(2006).has_value());
    CHECK_FALSE(p.values.at(2007).has_value());
}

TEST_CASE("property: scale invariance and ordering of windows")
{
    std::mt19937_64 rng(3);
    const VitalityWindow w;
    for (int i = 0; i < 500; ++i) {
        std::vector<double> c{double(rng() % 50), double(rng() % 50), double(rng() % 50)};
        const auto iv = vitality_value(c, w);
        for (double k : {0.5, 2.0, 10.0}) {
            std::vector<double> scaled{c[0] * k, c[1] * k, c[2] * k};
            const auto iv2 = vitality_value(scaled, w);
            REQUIRE(iv.has_value() == iv2.has_value());
            if (iv)
                CHECK(*iv2 == doctest::Approx(*iv).epsilon(1e-12));
        }
        if (c[0] < c[1] && c[1] < c[2])
            CHECK(*iv > 1.0);
        if (c[0] > c[1] && c[1] > c[2])
            CHECK(*iv < 1.0);
    }
}

TEST_CASE("milestone on the worked profile")
{
    const auto p = profile_of(2000, {0.9, 1.2, 1.1, 0.8, 1.3, 1.4, 1.2, 1.5, 1.1});
    const auto m = impact_vitality_milestone(p);
    REQUIRE(m);
    CHECK(m->year == 2004);
    CHECK(m->run_length == 5);
    CHECK_FALSE(m->preliminary);
    CHECK(oracle::milestone_scan(p.values, p.last_year) == 2004);

    CHECK(impact_vitality_milestone(p, 5)->preliminary);
    CHECK_FALSE(impact_vitality_milestone(p, 4)->preliminary);
}

TEST_CASE("milestone edge cases")
{
    // Growth from the first defined year.
    auto all = profile_of(1990, {1.1, 1.2, 1.3, 1.05});
    CHECK(impact_vitality_milestone(all)->year == 1990);

    CHECK_FALSE(impact_vitality_milestone(profile_of(2000, {1.2, 1.3, 0.95})));
    CHECK_FALSE(impact_vitality_milestone(profile_of(2000, {1.2, 1.3, std::nullopt})));
    // Exactly 1 does not extend a run.
    CHECK(impact_vitality_milestone(profile_of(2000, {1.2, 1.0, 1.3}))->year == 2002);
    // Undefined values break runs.
    CHECK(impact_vitality_milestone(profile_of(2000, {1.2, std::nullopt, 1.3, 1.4}))->year == 2002);

    auto short_run = impact_vitality_milestone(profile_of(2000, {0.5, 1.3, 1.4}));
    CHECK(short_run->run_length == 2);
    CHECK(short_run->preliminary);
    CHECK_FALSE(impact_vitality_milestone(VitalityProfile{}));
}

TEST_CASE("property: detector agrees with exhaustive scan")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> around_one(0.7, 1.3);
    for (int trial = 0; trial < 2000; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 30);
        std::vector<std::optional<double>> ivs;
        for (int i = 0; i < len; ++i) {
            if (rng() % 8 == 0)
                ivs.push_back(std::nullopt);
            else if (rng() % 10 == 0)
                ivs.push_back(1.0);
            else
                ivs.push_back(around_one(rng));
        }
        const auto p = profile_of(1980, ivs);
        const auto m = impact_vitality_milestone(p);
        const auto expected = oracle::milestone_scan(p.values, p.last_year);
        REQUIRE(m.has_value() == expected.has_value());
        if (m) {
            CHECK(m->year == *expected);
            CHECK(m->run_length == p.last_year - *expected + 1);
        }
    }
}

TEST_CASE("review milestone is the earliest target-journal review")
{
    const auto c = corpus_of("R1\t2003\tNature\tReview\tIndia\n"
                             "R2\t1998\tScience\tReview\tIndia;Brazil\n"
                             "R3\t1990\tCell\tReview\tIndia\n"
                             "R4\t1995\tCell\tReview\tMexico\n"
                             "A1\t1990\tNature\tArticle\tMexico\n"
                             "C1\t2004\tX\tArticle\t\n",
                             "C1\tR1\n");
    const auto m = review_milestone(c, "India");
    REQUIRE(m);
    CHECK(m->year == 1998);
    CHECK(m->kind == MilestoneKind::Review);
    CHECK(review_milestone(c, "Brazil")->year == 1998);
    CHECK_FALSE(review_milestone(c, "Mexico"));
    CHECK_FALSE(review_milestone(c, "China"));
}

TEST_CASE("property: review milestone never moves later when publications are added")
{
    std::mt19937 rng(5);
    std::string pubs = "C0\t2010\tX\tArticle\t\n";
    std::optional<Year> last;
    for (int i = 0; i < 60; ++i) {
        const bool review = rng() % 4 == 0;
        pubs += "P" + std::to_string(i) + "\t" + std::to_string(1980 + rng() % 30) + "\t" +
                (rng() % 3 ? "Nature" : "Cell") + "\t" + (review ? "Review" : "Article") + "\tChina\n";
        const auto c = corpus_of(pubs, "C0\tP0\n");
        const auto m = review_milestone(c, "China");
        if (last) {
            REQUIRE(m);
            CHECK(m->year <= *last);
        }
        if (m)
            last = m->year;
    }
}

TEST_CASE("profile TSV and milestone JSON exports")
{
    VitalityProfile p = profile_of(2002, {13.0 / 11, std::nullopt});
    std::ostringstream tsv;
    write_profiles_tsv(tsv, {p});
    CHECK(tsv.str() == "country\tyear\tiv\nX\t2002\t1.181818\nX\t2003\t\n");

    std::ostringstream json;
    write_milestones_json(json, {Milestone{"China", MilestoneKind::ImpactVitality, 1983, false, 26},
                                 Milestone{"China", MilestoneKind::Review, 1984, false, 0}});
    const auto s = json.str();
    CHECK(s.find("\"kind\": \"impact_vitality\"") != std::string::npos);
    CHECK(s.find("\"run_length\": 26") != std::string::npos);
    CHECK(s.find("\"run_length\": null") != std::string::npos);
}

} // TEST_SUITE
