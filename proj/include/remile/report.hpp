#pragma once

#include "remile/corpus.hpp"
#include "remile/indicators.hpp"
#include "remile/stats.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace remile {

struct CountryGroup {
    std::string name;
    std::vector<std::string> members;
};

/// BRIC and N-11 in their conventional membership.
std::vector<CountryGroup> default_groups();

/// `{"group": ["member", ...], ...}` in document order. Members are
/// canonicalized. Throws ConfigError for empty groups or overlapping membership.
std::vector<CountryGroup> parse_groups(std::string_view json_text, Canonicalizer& names);

std::string groups_to_json(const std::vector<CountryGroup>& groups);

struct EconomicRecord {
    std::string country;
    std::optional<double> gdp;
    std::optional<double> population;
    std::optional<double> gdp_per_capita;
    std::optional<double> ges;
};

/// Header names the columns; `country` is required, the others may be absent.
/// Blank cells are missing values.
std::vector<EconomicRecord> parse_economics(std::string_view text, Canonicalizer& names);

struct MilestoneRow {
    std::string country;
    std::string group;
    std::optional<Milestone> iv;
    std::optional<Milestone> review;
};

struct MilestoneTable {
    std::vector<MilestoneRow> rows;
};

struct ReportConfig {
    Selection selection;
    VitalityWindow window;
    int preliminary_threshold = kDefaultPreliminaryThreshold;
    bool include_preliminary = true;
};

/// One row per member, in group then member order.
MilestoneTable milestone_table(const Corpus& corpus, const std::vector<CountryGroup>& groups,
                               const ReportConfig& config, Diagnostics& diag,
                               std::vector<VitalityProfile>* profiles = nullptr);

struct AnalysisResult {
    std::string name;
    int n = 0;  ///< pairwise-complete count
    std::optional<stats::CorrelationResult> result;  ///< nullopt: insufficient or degenerate data
    std::string note;
};

/// iv and review milestones each against gdp, population, gdp_per_capita and
/// ges, plus iv against review. Nine analyses in that order.
std::vector<AnalysisResult> correlation_suite(const MilestoneTable& table,
                                              const std::vector<EconomicRecord>& econ,
                                              bool include_preliminary = true);

struct FigurePoint {
    std::string country;
    std::string group;
    Year iv_year;
    Year review_year;
    bool preliminary;
};

struct UnreachedEntry {
    std::string country;
    std::string group;
    std::optional<Year> iv_year;
    std::optional<Year> review_year;
};

struct FigureData {
    std::vector<std::string> groups;
    std::vector<FigurePoint> points;
    std::vector<UnreachedEntry> unreached;
    Year reference_year = 2001;
};

inline constexpr Year kDefaultReferenceYear = 2001;

FigureData figure_data(const MilestoneTable& table, Year reference_year = kDefaultReferenceYear);

std::string figure_to_json(const FigureData& fig);

/// Fixed 640x480 canvas. Markers carry class "marker"; preliminary markers
/// are drawn hollow with class "marker preliminary". Byte-identical output for
/// identical input.
std::string render_figure_svg(const FigureData& fig);

void write_milestones_tsv(std::ostream& out, const MilestoneTable& table);
void write_correlations_tsv(std::ostream& out, const std::vector<AnalysisResult>& results);

} // namespace remile
