#include "remile/synthgen.hpp"

#include "remile/error.hpp"
#include "remile/report.hpp"
#include "remile/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <sstream>

namespace remile::synth {

namespace {

constexpr const char* kCiterJournal = "Synthetic Citing Journal";
constexpr int kMaxRefsPerCiter = 3;

void check_years(const std::map<Year, long>& m, const std::string& what, const std::string& country)
{
    for (const auto& [y, n] : m) {
        if (y < kMinYear || y > kMaxYear)
            throw ConfigError(country + ": " + what + " year " + std::to_string(y) + " out of range");
        if (n < 0)
            throw ConfigError(country + ": negative " + what + " count in " + std::to_string(y));
    }
}

class Emitter {
public:
    explicit Emitter(std::uint64_t seed) : rng_(seed) {}

    std::string new_id()
    {
        while (true) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "W%010llx",
                          static_cast<unsigned long long>(rng_() & 0xffffffffffULL));
            if (ids_.insert(buf).second)
                return buf;
        }
    }

    std::uint64_t draw(std::uint64_t bound) { return rng_() % bound; }

    void publication(const std::string& id, Year year, const std::string& journal,
                     const std::string& doc_type, const std::string& country)
    {
        pubs_ << id << '\t' << year << '\t' << journal << '\t' << doc_type << '\t' << country << '\n';
    }

    void link(const std::string& citing, const std::string& cited)
    {
        links_ << citing << '\t' << cited << '\n';
    }

    GeneratedCorpus finish() const
    {
        return {"pub_id\tyear\tjournal\tdoc_type\tcountries\n" + pubs_.str(),
                "citing_id\tcited_id\n" + links_.str()};
    }

private:
    std::mt19937_64 rng_;
    std::set<std::string> ids_;
    std::ostringstream pubs_;
    std::ostringstream links_;
};

} // namespace

GeneratedCorpus generate(const std::vector<TrajectorySpec>& specs, std::uint64_t seed)
{
    std::set<std::string> countries;
    for (const auto& s : specs) {
        if (collapse_whitespace(s.country).empty())
            throw ConfigError("trajectory spec with empty country");
        if (!countries.insert(name_key(s.country)).second)
            throw ConfigError("duplicate trajectory spec for '" + s.country + "'");
        check_years(s.base_pubs, "base_pubs", s.country);
        check_years(s.citing_counts, "citing_counts", s.country);
        if (s.review_year && (*s.review_year < kMinYear || *s.review_year > kMaxYear))
            throw ConfigError(s.country + ": review_year out of range");
    }

    static const char* const journals[] = {"Nature", "Science"};
    static const char* const base_types[] = {"Article", "Letter", "Note"};

    Emitter em(seed);
    for (const auto& s : specs) {
        std::vector<std::pair<Year, std::string>> selected;
        for (const auto& [year, n] : s.base_pubs) {
            for (long k = 0; k < n; ++k) {
                auto id = em.new_id();
                em.publication(id, year, journals[em.draw(2)], base_types[em.draw(3)], s.country);
                selected.emplace_back(year, std::move(id));
            }
        }
        if (s.review_year) {
            auto id = em.new_id();
            em.publication(id, *s.review_year, journals[em.draw(2)], "Review", s.country);
            selected.emplace_back(*s.review_year, std::move(id));
        }
        std::stable_sort(selected.begin(), selected.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });

        for (const auto& [year, n] : s.citing_counts) {
            if (n == 0)
                continue;
            const auto eligible = static_cast<std::size_t>(
                std::upper_bound(selected.begin(), selected.end(), year,
                                 [](Year y, const auto& p) { return y < p.first; }) -
                selected.begin());
            if (eligible == 0)
                throw ConfigError(s.country + ": " + std::to_string(n) + " citers in " +
                                  std::to_string(year) + " but no selected publication by then");
            for (long k = 0; k < n; ++k) {
                const auto citer = em.new_id();
                em.publication(citer, year, kCiterJournal, "Citing", "");
                const auto refs = 1 + em.draw(std::min<std::size_t>(kMaxRefsPerCiter, eligible));
                std::set<std::size_t> picked;
                while (picked.size() < refs)
                    picked.insert(em.draw(eligible));
                for (auto i : picked)
                    em.link(citer, selected[i].second);
            }
        }
    }
    return em.finish();
}

namespace {

std::map<Year, long> year_map(const nlohmann::json& j, const std::string& what)
{
    std::map<Year, long> out;
    if (j.is_null())
        return out;
    if (!j.is_object())
        throw ConfigError(what + " must be an object of year -> count");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number_integer())
            throw ConfigError(what + "[" + key + "] must be an integer");
        try {
            out[static_cast<Year>(text::parse_int(key, what))] = value.get<long>();
        } catch (const DataError& e) {
            throw ConfigError(e.what());
        }
    }
    return out;
}

} // namespace

std::vector<TrajectorySpec> parse_specs(std::string_view json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("trajectory specs: ") + e.what());
    }
    if (!doc.is_array())
        throw ConfigError("trajectory specs must be a JSON array");

    std::vector<TrajectorySpec> specs;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("country") || !item["country"].is_string())
            throw ConfigError("each trajectory spec needs a string 'country'");
        TrajectorySpec s;
        s.country = item["country"].get<std::string>();
        s.base_pubs = year_map(item.value("base_pubs", nlohmann::json()), "base_pubs");
        s.citing_counts = year_map(item.value("citing_counts", nlohmann::json()), "citing_counts");
        if (item.contains("review_year") && !item["review_year"].is_null()) {
            if (!item["review_year"].is_number_integer())
                throw ConfigError(s.country + ": review_year must be an integer or null");
            s.review_year = item["review_year"].get<Year>();
        }
        specs.push_back(std::move(s));
    }
    return specs;
}

namespace {

constexpr Year kFixtureEnd = 2008;

// Citing counts with a dip right before `milestone` and strict growth from it
// on. With the default window the dip year has IV < 1 and every year from the
// milestone to the end has IV > 1. milestone == start + 2 gives growth from
// the first defined year.
std::map<Year, long> trajectory(Year start, Year milestone, long level, long growth)
{
    std::map<Year, long> c;
    if (milestone == start + 2) {
        for (Year y = start; y <= kFixtureEnd; ++y)
            c[y] = level + growth * (y - start);
        return c;
    }
    static constexpr long sawtooth[] = {2, 0, 3, 1};
    for (Year y = start; y < milestone - 2; ++y)
        c[y] = level + sawtooth[(y - start) % 4];
    c[milestone - 2] = level + 4;
    c[milestone - 1] = level;
    for (Year y = milestone; y <= kFixtureEnd; ++y)
        c[y] = level + 6 + growth * (y - milestone);
    return c;
}

std::map<Year, long> base_publications(Year start)
{
    std::map<Year, long> b;
    for (Year y = start; y <= kFixtureEnd; ++y)
        b[y] = 1 + (y - start) / 6;
    return b;
}

struct Row {
    const char* country;
    const char* group;
    Year start;
    Year milestone;
    long level;
    long growth;
    std::optional<Year> review;
    double gdp_bn;
    double population_m;
    double ges;
};

// Magnitudes are arbitrary fixture constants, loosely shaped on mid-2000s
// orders of magnitude. They are not measured data.
const Row kRows[] = {
    {"Brazil", "BRIC", 1982, 1989, 4, 2, 1986, 892, 186, 4.6},
    {"Russia", "BRIC", 1980, 1992, 6, 2, 1981, 764, 143, 4.9},
    {"India", "BRIC", 1980, 1987, 5, 3, 1982, 834, 1134, 4.1},
    {"China", "BRIC", 1981, 1983, 3, 4, 1984, 2286, 1304, 5.6},
    {"Bangladesh", "N-11", 1990, 2007, 2, 1, std::nullopt, 70, 144, 3.1},
    {"Egypt", "N-11", 1985, 2003, 3, 1, 2000, 94, 75, 4.0},
    {"Indonesia", "N-11", 1987, 2004, 2, 1, 2005, 286, 227, 3.9},
    {"Iran", "N-11", 1986, 2002, 3, 2, 2003, 226, 70, 4.2},
    {"Mexico", "N-11", 1983, 1997, 4, 2, 1994, 866, 104, 5.2},
    {"Nigeria", "N-11", 1988, 2006, 2, 1, std::nullopt, 176, 140, 3.0},
    {"Pakistan", "N-11", 1987, 2005, 2, 1, std::nullopt, 120, 158, 3.2},
    {"Philippines", "N-11", 1986, 2005, 2, 1, 2006, 103, 86, 4.3},
    {"South Korea", "N-11", 1984, 2001, 5, 3, 1999, 898, 48, 7.3},
    {"Turkey", "N-11", 1985, 2001, 3, 2, 2002, 501, 68, 4.8},
    {"Vietnam", "N-11", 1989, 2006, 2, 1, std::nullopt, 58, 84, 4.9},
};

} // namespace

std::vector<FixtureCountry> bric_n11_countries()
{
    std::vector<FixtureCountry> out;
    for (const auto& r : kRows) {
        FixtureCountry f;
        f.spec.country = r.country;
        f.spec.base_pubs = base_publications(r.start);
        f.spec.citing_counts = trajectory(r.start, r.milestone, r.level, r.growth);
        f.spec.review_year = r.review;
        f.group = r.group;
        f.iv_milestone = r.milestone;
        f.preliminary = kFixtureEnd - r.milestone + 1 <= kDefaultPreliminaryThreshold;
        out.push_back(std::move(f));
    }
    return out;
}

Fixture bric_n11_fixture(std::uint64_t seed)
{
    const auto countries = bric_n11_countries();
    std::vector<TrajectorySpec> specs;
    for (const auto& c : countries)
        specs.push_back(c.spec);

    Fixture fx;
    fx.corpus = generate(specs, seed);

    std::ostringstream econ;
    econ << "country\tgdp\tpopulation\tgdp_per_capita\tges\n";
    for (const auto& r : kRows) {
        const double gdp = r.gdp_bn * 1e9;
        const double pop = r.population_m * 1e6;
        econ << r.country << '\t' << text::format_double(gdp) << '\t' << text::format_double(pop) << '\t'
             << text::format_fixed(gdp / pop, 2) << '\t' << text::format_double(r.ges) << '\n';
    }
    fx.economics_tsv = econ.str();

    std::vector<CountryGroup> groups;
    for (const auto& c : countries) {
        if (groups.empty() || groups.back().name != c.group)
            groups.push_back({c.group, {}});
        groups.back().members.push_back(c.spec.country);
    }
    fx.groups_json = groups_to_json(groups);
    return fx;
}

} // namespace remile::synth
