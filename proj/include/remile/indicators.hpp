#pragma once

#include "remile/corpus.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace remile {

/// Yearly counts of distinct publications citing a country's selected set.
/// Years in [first_year, last_year] absent from `counts` are zero.
struct CitingSeries {
    std::string country;
    std::map<Year, long> counts;
    Year first_year = 0;
    Year last_year = 0;

    long at(Year y) const;
};

CitingSeries citing_series(const Corpus& corpus, const std::string& country, const Selection& sel = {});

/// Window length and recency weights for the impact-vitality indicator.
/// `weights[i]` applies to the citing year `i` years before the window end.
class VitalityWindow {
public:
    /// n = 3 with weights 1, 1/2, 1/3.
    VitalityWindow() : VitalityWindow(3) {}

    /// Harmonic weights 1/(i+1). Throws ConfigError for n < 2.
    explicit VitalityWindow(int length);

    /// Throws ConfigError unless weights are positive and strictly decreasing with age.
    explicit VitalityWindow(std::vector<double> weights_newest_first);

    int length() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

/// Impact vitality of one window: recency-weighted mean over plain mean.
/// `counts_oldest_first` has one entry per window year. Returns nullopt when
/// the window total is zero.
std::optional<double> vitality_value(const std::vector<double>& counts_oldest_first,
                                     const VitalityWindow& window);

struct VitalityProfile {
    std::string country;
    VitalityWindow window;
    Year first_year = 0;
    Year last_year = 0;
    /// Every year in [first_year + n - 1, last_year]; nullopt for zero windows.
    std::map<Year, std::optional<double>> values;
};

VitalityProfile impact_vitality(const CitingSeries& series, const VitalityWindow& window = {});

enum class MilestoneKind { ImpactVitality, Review };

struct Milestone {
    std::string country;
    MilestoneKind kind = MilestoneKind::ImpactVitality;
    Year year = 0;
    bool preliminary = false;
    int run_length = 0;

    friend bool operator==(const Milestone&, const Milestone&) = default;
};

inline constexpr int kDefaultPreliminaryThreshold = 3;

/// Start of the run of IV > 1 that reaches the profile's last year. Undefined
/// values and values equal to 1 end a run.
std::optional<Milestone> impact_vitality_milestone(const VitalityProfile& profile,
                                                   int preliminary_threshold = kDefaultPreliminaryThreshold);

/// Year of the country's first Review in the selected journals.
std::optional<Milestone> review_milestone(const Corpus& corpus, const std::string& country,
                                          const std::set<std::string>& journals = default_journals());

const char* to_string(MilestoneKind kind);

/// `country\tyear\tiv` rows; undefined IV is written as an empty cell.
void write_profiles_tsv(std::ostream& out, const std::vector<VitalityProfile>& profiles);

/// JSON array of {country, kind, year, preliminary, run_length}.
void write_milestones_json(std::ostream& out, const std::vector<Milestone>& milestones);

} // namespace remile
