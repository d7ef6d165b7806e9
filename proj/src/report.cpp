#include "remile/report.hpp"

#include "remile/error.hpp"
#include "remile/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace remile {

std::vector<CountryGroup> default_groups()
{
    return {
        {"BRIC", {"Brazil", "Russia", "India", "China"}},
        {"N-11",
         {"Bangladesh", "Egypt", "Indonesia", "Iran", "Mexico", "Nigeria", "Pakistan", "Philippines",
          "South Korea", "Turkey", "Vietnam"}},
    };
}

std::vector<CountryGroup> parse_groups(std::string_view json_text, Canonicalizer& names)
{
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("groups config: ") + e.what());
    }
    if (!doc.is_object() || doc.empty())
        throw ConfigError("groups config must be a non-empty object of group -> member list");

    std::vector<CountryGroup> groups;
    std::set<std::string> seen;
    for (const auto& [name, members] : doc.items()) {
        if (!members.is_array() || members.empty())
            throw ConfigError("group '" + name + "' must be a non-empty array");
        CountryGroup g{name, {}};
        for (const auto& m : members) {
            if (!m.is_string())
                throw ConfigError("group '" + name + "' has a non-string member");
            auto country = names.canonical(m.get<std::string>());
            if (country.empty())
                throw ConfigError("group '" + name + "' has an empty member");
            if (!seen.insert(country).second)
                throw ConfigError("country '" + country + "' appears in more than one group entry");
            g.members.push_back(std::move(country));
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

std::string groups_to_json(const std::vector<CountryGroup>& groups)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& g : groups)
        doc[g.name] = g.members;
    return doc.dump(2) + "\n";
}

std::vector<EconomicRecord> parse_economics(std::string_view text, Canonicalizer& names)
{
    const auto lines = text::lines(text);
    if (lines.empty())
        throw DataError("economics: empty file");

    enum class Col { Country, Gdp, Population, GdpPerCapita, Ges, Ignored };
    std::vector<Col> cols;
    bool has_country = false;
    for (auto cell : text::split(lines.front().content, '\t')) {
        const auto key = name_key(cell);
        if (key == "country") {
            cols.push_back(Col::Country);
            has_country = true;
        } else if (key == "gdp") {
            cols.push_back(Col::Gdp);
        } else if (key == "population") {
            cols.push_back(Col::Population);
        } else if (key == "gdp_per_capita") {
            cols.push_back(Col::GdpPerCapita);
        } else if (key == "ges") {
            cols.push_back(Col::Ges);
        } else {
            cols.push_back(Col::Ignored);
        }
    }
    if (!has_country)
        throw DataError("economics: header lacks a 'country' column");

    std::vector<EconomicRecord> out;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (collapse_whitespace(line.content).empty())
            continue;
        const auto cells = text::split(line.content, '\t');
        const auto where = "economics line " + std::to_string(line.number);
        if (cells.size() != cols.size())
            throw DataError(where + ": expected " + std::to_string(cols.size()) + " columns");

        EconomicRecord rec;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto cell = collapse_whitespace(cells[c]);
            if (cols[c] == Col::Country) {
                rec.country = names.canonical(cell);
                continue;
            }
            if (cols[c] == Col::Ignored || cell.empty())
                continue;
            const double v = text::parse_real(cell, where);
            const bool ges = cols[c] == Col::Ges;
            if (ges ? v < 0 : v <= 0)
                throw DataError(where + ": value " + cell + (ges ? " must be >= 0" : " must be > 0"));
            switch (cols[c]) {
            case Col::Gdp: rec.gdp = v; break;
            case Col::Population: rec.population = v; break;
            case Col::GdpPerCapita: rec.gdp_per_capita = v; break;
            case Col::Ges: rec.ges = v; break;
            default: break;
            }
        }
        if (rec.country.empty())
            throw DataError(where + ": empty country");
        if (!seen.insert(rec.country).second)
            throw DataError(where + ": duplicate country '" + rec.country + "'");
        out.push_back(std::move(rec));
    }
    return out;
}

MilestoneTable milestone_table(const Corpus& corpus, const std::vector<CountryGroup>& groups,
                               const ReportConfig& config, Diagnostics& diag,
                               std::vector<VitalityProfile>* profiles)
{
    MilestoneTable table;
    for (const auto& g : groups) {
        for (const auto& country : g.members) {
            MilestoneRow row{country, g.name, std::nullopt, std::nullopt};
            if (select_publications(corpus, country, config.selection).empty())
                diag.note(Severity::Warning, "no_selected_publications",
                          "no selected publications for '" + country + "'");

            const auto series = citing_series(corpus, country, config.selection);
            auto profile = impact_vitality(series, config.window);
            row.iv = impact_vitality_milestone(profile, config.preliminary_threshold);
            row.review = review_milestone(corpus, country, config.selection.journals);
            if (profiles)
                profiles->push_back(std::move(profile));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

namespace {

using Getter = std::optional<double> (*)(const EconomicRecord&);

struct EconVariable {
    const char* name;
    Getter get;
};

constexpr EconVariable kEconVariables[] = {
    {"gdp", [](const EconomicRecord& e) { return e.gdp; }},
    {"population", [](const EconomicRecord& e) { return e.population; }},
    {"gdp_per_capita", [](const EconomicRecord& e) { return e.gdp_per_capita; }},
    {"ges", [](const EconomicRecord& e) { return e.ges; }},
};

AnalysisResult run_analysis(std::string name, stats::PairedSample sample)
{
    AnalysisResult a{std::move(name), 0, std::nullopt, {}};
    for (std::size_t i = 0; i < sample.xs.size(); ++i)
        a.n += sample.xs[i] && sample.ys[i] ? 1 : 0;
    try {
        a.result = stats::correlate(sample);
    } catch (const InsufficientDataError& e) {
        a.note = std::string("insufficient: ") + e.what();
    } catch (const DegenerateInputError& e) {
        a.note = std::string("degenerate: ") + e.what();
    }
    if (a.result && a.result->degenerate)
        a.note = "degenerate: |r| = 1, p set to 0";
    return a;
}

} // namespace

std::vector<AnalysisResult> correlation_suite(const MilestoneTable& table,
                                              const std::vector<EconomicRecord>& econ,
                                              bool include_preliminary)
{
    // Sorting by country makes every sum independent of input row order.
    std::vector<const MilestoneRow*> rows;
    for (const auto& r : table.rows)
        rows.push_back(&r);
    std::sort(rows.begin(), rows.end(),
              [](const auto* a, const auto* b) { return a->country < b->country; });

    auto econ_for = [&](const std::string& country) -> const EconomicRecord* {
        for (const auto& e : econ)
            if (e.country == country)
                return &e;
        return nullptr;
    };
    auto iv_year = [&](const MilestoneRow& r) -> std::optional<double> {
        if (!r.iv || (r.iv->preliminary && !include_preliminary))
            return std::nullopt;
        return r.iv->year;
    };
    auto review_year = [](const MilestoneRow& r) -> std::optional<double> {
        if (!r.review)
            return std::nullopt;
        return r.review->year;
    };

    using RowValue = std::function<std::optional<double>(const MilestoneRow&)>;
    const std::pair<const char*, RowValue> milestones[] = {{"iv_milestone", iv_year},
                                                           {"review_milestone", review_year}};

    std::vector<AnalysisResult> out;
    for (const auto& [mname, mget] : milestones) {
        for (const auto& var : kEconVariables) {
            stats::PairedSample s;
            s.x_name = mname;
            s.y_name = var.name;
            for (const auto* r : rows) {
                const auto* e = econ_for(r->country);
                s.labels.push_back(r->country);
                s.xs.push_back(mget(*r));
                s.ys.push_back(e ? var.get(*e) : std::nullopt);
            }
            out.push_back(run_analysis(std::string(mname) + "~" + var.name, std::move(s)));
        }
    }
    stats::PairedSample s;
    s.x_name = "iv_milestone";
    s.y_name = "review_milestone";
    for (const auto* r : rows) {
        s.labels.push_back(r->country);
        s.xs.push_back(iv_year(*r));
        s.ys.push_back(review_year(*r));
    }
    out.push_back(run_analysis("iv_milestone~review_milestone", std::move(s)));
    return out;
}

FigureData figure_data(const MilestoneTable& table, Year reference_year)
{
    FigureData fig;
    fig.reference_year = reference_year;
    for (const auto& r : table.rows) {
        if (std::find(fig.groups.begin(), fig.groups.end(), r.group) == fig.groups.end())
            fig.groups.push_back(r.group);
        if (r.iv && r.review) {
            fig.points.push_back({r.country, r.group, r.iv->year, r.review->year, r.iv->preliminary});
        } else {
            UnreachedEntry u{r.country, r.group, std::nullopt, std::nullopt};
            if (r.iv)
                u.iv_year = r.iv->year;
            if (r.review)
                u.review_year = r.review->year;
            fig.unreached.push_back(std::move(u));
        }
    }
    return fig;
}

std::string figure_to_json(const FigureData& fig)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["reference_year"] = fig.reference_year;
    doc["reference_lines"] = ordered_json::array({
        ordered_json{{"axis", "x"}, {"value", fig.reference_year}, {"style", "dashed"}},
        ordered_json{{"axis", "y"}, {"value", fig.reference_year}, {"style", "dashed"}},
    });
    doc["axes"] = {{"x", "iv_milestone"}, {"y", "review_milestone"}};
    doc["groups"] = fig.groups;
    auto points = ordered_json::array();
    for (const auto& p : fig.points)
        points.push_back({{"country", p.country},
                          {"group", p.group},
                          {"x", p.iv_year},
                          {"y", p.review_year},
                          {"preliminary", p.preliminary}});
    doc["points"] = std::move(points);
    auto unreached = ordered_json::array();
    for (const auto& u : fig.unreached) {
        ordered_json j{{"country", u.country}, {"group", u.group}};
        j["iv_milestone"] = u.iv_year ? ordered_json(*u.iv_year) : ordered_json(nullptr);
        j["review_milestone"] = u.review_year ? ordered_json(*u.review_year) : ordered_json(nullptr);
        unreached.push_back(std::move(j));
    }
    doc["unreached"] = std::move(unreached);
    return doc.dump(2) + "\n";
}

void write_milestones_tsv(std::ostream& out, const MilestoneTable& table)
{
    out << "country\tgroup\tiv_milestone\tiv_preliminary\tiv_run_length\treview_milestone\n";
    for (const auto& r : table.rows) {
        out << r.country << '\t' << r.group << '\t';
        if (r.iv)
            out << r.iv->year << '\t' << (r.iv->preliminary ? "true" : "false") << '\t'
                << r.iv->run_length;
        else
            out << "\t\t";
        out << '\t';
        if (r.review)
            out << r.review->year;
        out << '\n';
    }
}

void write_correlations_tsv(std::ostream& out, const std::vector<AnalysisResult>& results)
{
    out << "analysis\tn\tr\tt\tdf\tp_one\tp_two\n";
    for (const auto& a : results) {
        out << a.name;
        if (a.result) {
            const auto& c = *a.result;
            out << '\t' << c.n << '\t' << text::format_double(c.r) << '\t'
                << text::format_double(c.t) << '\t' << c.df << '\t'
                << text::format_double(c.p_one) << '\t' << text::format_double(c.p_two);
        } else {
            out << '\t' << a.n << "\t\t\t\t\t";
        }
        out << '\n';
    }
}

} // namespace remile
