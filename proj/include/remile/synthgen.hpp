#pragma once

#include "remile/corpus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace remile::synth {

/// Prescribed trajectory for one country.
struct TrajectorySpec {
    std::string country;
    /// Nature/Science Article/Letter/Note publications per year.
    std::map<Year, long> base_pubs;
    /// Distinct citing publications per year.
    std::map<Year, long> citing_counts;
    std::optional<Year> review_year;
};

struct GeneratedCorpus {
    std::string publications_tsv;
    std::string citations_tsv;
};

/// Emits a corpus whose citing series and review milestone equal the specs.
/// Citers are one-off publications of type Other("Citing"), unique per
/// country and year. Throws ConfigError for infeasible or malformed specs.
GeneratedCorpus generate(const std::vector<TrajectorySpec>& specs, std::uint64_t seed);

/// JSON array of {country, base_pubs: {year: n}, citing_counts: {year: n}, review_year}.
std::vector<TrajectorySpec> parse_specs(std::string_view json_text);

struct FixtureCountry {
    TrajectorySpec spec;
    std::string group;
    Year iv_milestone;
    bool preliminary;
};

/// Fifteen synthetic countries in two groups: four with early sustained
/// growth and large GDP, eleven with later growth, four of which never
/// publish a Review.
std::vector<FixtureCountry> bric_n11_countries();

struct Fixture {
    GeneratedCorpus corpus;
    std::string economics_tsv;
    std::string groups_json;
};

inline constexpr std::uint64_t kFixtureSeed = 2001;

Fixture bric_n11_fixture(std::uint64_t seed = kFixtureSeed);

} // namespace remile::synth
