#pragma once

#include "remile/diagnostics.hpp"
#include "remile/names.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace remile {

using Year = int;

inline constexpr Year kMinYear = 1900;
inline constexpr Year kMaxYear = 2100;

/// Article, Letter, Note, Review, or any other label carried verbatim.
class DocType {
public:
    enum class Kind { Article, Letter, Note, Review, Other };

    DocType() = default;
    static DocType article() { return DocType(Kind::Article, {}); }
    static DocType letter() { return DocType(Kind::Letter, {}); }
    static DocType note() { return DocType(Kind::Note, {}); }
    static DocType review() { return DocType(Kind::Review, {}); }
    static DocType other(std::string label) { return DocType(Kind::Other, std::move(label)); }

    /// Standard labels match case-insensitively; anything else becomes Other(label).
    static DocType parse(std::string_view label);

    Kind kind() const { return kind_; }
    bool is_other() const { return kind_ == Kind::Other; }
    std::string label() const;

    friend auto operator<=>(const DocType&, const DocType&) = default;

private:
    DocType(Kind kind, std::string label) : kind_(kind), other_(std::move(label)) {}

    Kind kind_ = Kind::Article;
    std::string other_;
};

struct PublicationRecord {
    std::string pub_id;
    Year year = 0;
    std::string journal;
    DocType doc_type;
    std::set<std::string> countries;

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct CitationLink {
    std::string citing_id;
    std::string cited_id;

    friend auto operator<=>(const CitationLink&, const CitationLink&) = default;
};

enum class LinkPolicy { Lenient, Strict };

/// Immutable after build_corpus; safe for concurrent reads.
class Corpus {
public:
    const std::map<std::string, PublicationRecord>& publications() const { return publications_; }
    const std::set<CitationLink>& links() const { return links_; }

    /// Citing ids for a cited id, empty when uncited.
    const std::set<std::string>& citers_of(const std::string& cited_id) const;
    const std::map<std::string, std::set<std::string>>& reverse_index() const { return reverse_index_; }

    const PublicationRecord* find(const std::string& pub_id) const;

    /// Last analyzable citing year.
    Year observation_end() const { return observation_end_; }

private:
    friend Corpus build_corpus(std::vector<PublicationRecord>, std::set<CitationLink>,
                               std::optional<Year>, Diagnostics&);

    std::map<std::string, PublicationRecord> publications_;
    std::set<CitationLink> links_;
    std::map<std::string, std::set<std::string>> reverse_index_;
    Year observation_end_ = 0;
};

/// Parses `pub_id\tyear\tjournal\tdoc_type\tcountries`; countries are
/// semicolon-separated and may be empty. Throws DataError with the line number
/// on malformed input and on duplicate ids.
std::vector<PublicationRecord> parse_publications(std::string_view text, Canonicalizer& names);

/// Parses `citing_id\tcited_id`. Duplicates and self-citations are dropped.
/// Dangling ids are dropped and counted (Lenient) or rejected (Strict).
std::set<CitationLink> parse_citations(std::string_view text,
                                       const std::vector<PublicationRecord>& publications,
                                       LinkPolicy policy, Diagnostics& diag);

/// Builds the reverse index and fixes the observation end. Without an
/// override the observation end is the latest year of any citing publication.
Corpus build_corpus(std::vector<PublicationRecord> publications, std::set<CitationLink> links,
                    std::optional<Year> observation_end, Diagnostics& diag);

std::string serialize_publications(const Corpus& corpus);
std::string serialize_citations(const Corpus& corpus);

inline const std::set<std::string>& default_journals()
{
    static const std::set<std::string> journals{"Nature", "Science"};
    return journals;
}

inline const std::set<DocType>& default_doc_types()
{
    static const std::set<DocType> types{DocType::article(), DocType::letter(), DocType::note(),
                                         DocType::review()};
    return types;
}

/// Which cited publications count for a country. Citing publications are not
/// filtered unless `citing_doc_types` is set.
struct Selection {
    std::set<std::string> journals = default_journals();
    std::set<DocType> doc_types = default_doc_types();
    std::optional<std::set<DocType>> citing_doc_types;
};

/// Full counting: a co-authored publication belongs to every listed country.
std::set<std::string> select_publications(const Corpus& corpus, const std::string& country,
                                          const std::set<std::string>& journals,
                                          const std::set<DocType>& doc_types);

inline std::set<std::string> select_publications(const Corpus& corpus, const std::string& country,
                                                 const Selection& sel = {})
{
    return select_publications(corpus, country, sel.journals, sel.doc_types);
}

} // namespace remile
