#include "remile/indicators.hpp"

#include "remile/error.hpp"
#include "remile/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace remile {

long CitingSeries::at(Year y) const
{
    auto it = counts.find(y);
    return it == counts.end() ? 0 : it->second;
}

CitingSeries citing_series(const Corpus& corpus, const std::string& country, const Selection& sel)
{
    CitingSeries s;
    s.country = country;
    s.last_year = corpus.observation_end();

    const auto selected = select_publications(corpus, country, sel);
    std::optional<Year> first;
    std::set<std::string> citers;
    for (const auto& id : selected) {
        const auto* cited = corpus.find(id);
        first = std::min(first.value_or(cited->year), cited->year);
        for (const auto& citer_id : corpus.citers_of(id)) {
            const auto* citer = corpus.find(citer_id);
            if (citer->year > s.last_year)
                continue;
            if (sel.citing_doc_types && !sel.citing_doc_types->contains(citer->doc_type))
                continue;
            citers.insert(citer_id);
        }
    }
    for (const auto& id : citers) {
        const Year y = corpus.find(id)->year;
        ++s.counts[y];
        first = std::min(first.value_or(y), y);
    }
    s.first_year = std::min(first.value_or(s.last_year), s.last_year);
    return s;
}

VitalityWindow::VitalityWindow(int length)
{
    if (length < 2)
        throw ConfigError("impact vitality window must be at least 2 years, got " +
                          std::to_string(length));
    weights_.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        weights_.push_back(1.0 / (i + 1));
}

VitalityWindow::VitalityWindow(std::vector<double> weights_newest_first)
    : weights_(std::move(weights_newest_first))
{
    if (weights_.size() < 2)
        throw ConfigError("impact vitality window must be at least 2 years");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] > 0))
            throw ConfigError("impact vitality weights must be positive");
        if (i > 0 && !(weights_[i] < weights_[i - 1]))
            throw ConfigError("impact vitality weights must strictly decrease with age");
    }
}

std::optional<double> vitality_value(const std::vector<double>& counts_oldest_first,
                                     const VitalityWindow& window)
{
    const auto& w = window.weights();
    const auto n = w.size();
    if (counts_oldest_first.size() != n)
        throw ConfigError("window holds " + std::to_string(counts_oldest_first.size()) +
                          " counts, expected " + std::to_string(n));

    double weighted = 0, weight_sum = 0, total = 0;
    for (std::size_t age = 0; age < n; ++age) {
        const double c = counts_oldest_first[n - 1 - age];
        weighted += w[age] * c;
        weight_sum += w[age];
        total += c;
    }
    if (total == 0)
        return std::nullopt;
    return (weighted / weight_sum) / (total / static_cast<double>(n));
}

VitalityProfile impact_vitality(const CitingSeries& series, const VitalityWindow& window)
{
    VitalityProfile p{series.country, window, series.first_year, series.last_year, {}};
    const int n = window.length();
    std::vector<double> counts(static_cast<std::size_t>(n));
    for (Year t = series.first_year + n - 1; t <= series.last_year; ++t) {
        for (int k = 0; k < n; ++k)
            counts[static_cast<std::size_t>(k)] = static_cast<double>(series.at(t - n + 1 + k));
        p.values.emplace(t, vitality_value(counts, window));
    }
    return p;
}

std::optional<Milestone> impact_vitality_milestone(const VitalityProfile& profile,
                                                   int preliminary_threshold)
{
    auto above_one = [&](Year y) {
        auto it = profile.values.find(y);
        return it != profile.values.end() && it->second && *it->second > 1.0;
    };

    const Year end = profile.last_year;
    if (!above_one(end))
        return std::nullopt;
    Year start = end;
    while (above_one(start - 1))
        --start;

    Milestone m;
    m.country = profile.country;
    m.kind = MilestoneKind::ImpactVitality;
    m.year = start;
    m.run_length = end - start + 1;
    m.preliminary = m.run_length <= preliminary_threshold;
    return m;
}

std::optional<Milestone> review_milestone(const Corpus& corpus, const std::string& country,
                                          const std::set<std::string>& journals)
{
    const auto reviews = select_publications(corpus, country, journals, {DocType::review()});
    std::optional<Year> first;
    for (const auto& id : reviews) {
        const Year y = corpus.find(id)->year;
        first = std::min(first.value_or(y), y);
    }
    if (!first)
        return std::nullopt;
    return Milestone{country, MilestoneKind::Review, *first, false, 0};
}

const char* to_string(MilestoneKind kind)
{
    return kind == MilestoneKind::ImpactVitality ? "impact_vitality" : "review";
}

void write_profiles_tsv(std::ostream& out, const std::vector<VitalityProfile>& profiles)
{
    out << "country\tyear\tiv\n";
    for (const auto& p : profiles)
        for (const auto& [year, iv] : p.values)
            out << p.country << '\t' << year << '\t' << (iv ? text::format_fixed(*iv, 6) : "") << '\n';
}

void write_milestones_json(std::ostream& out, const std::vector<Milestone>& milestones)
{
    auto doc = nlohmann::ordered_json::array();
    for (const auto& m : milestones) {
        nlohmann::ordered_json j;
        j["country"] = m.country;
        j["kind"] = to_string(m.kind);
        j["year"] = m.year;
        j["preliminary"] = m.preliminary;
        if (m.kind == MilestoneKind::ImpactVitality)
            j["run_length"] = m.run_length;
        else
            j["run_length"] = nullptr;
        doc.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

} // namespace remile
