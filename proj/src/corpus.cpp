#include "remile/corpus.hpp"

#include "remile/error.hpp"
#include "remile/text.hpp"

#include <sstream>
#include <unordered_set>

namespace remile {

DocType DocType::parse(std::string_view label)
{
    const auto key = name_key(label);
    if (key == "article")
        return article();
    if (key == "letter")
        return letter();
    if (key == "note")
        return note();
    if (key == "review")
        return review();
    return other(collapse_whitespace(label));
}

std::string DocType::label() const
{
    switch (kind_) {
    case Kind::Article: return "Article";
    case Kind::Letter: return "Letter";
    case Kind::Note: return "Note";
    case Kind::Review: return "Review";
    case Kind::Other: return other_;
    }
    return other_;
}

const std::set<std::string>& Corpus::citers_of(const std::string& cited_id) const
{
    static const std::set<std::string> none;
    auto it = reverse_index_.find(cited_id);
    return it == reverse_index_.end() ? none : it->second;
}

const PublicationRecord* Corpus::find(const std::string& pub_id) const
{
    auto it = publications_.find(pub_id);
    return it == publications_.end() ? nullptr : &it->second;
}

namespace {

std::string at_line(std::size_t n)
{
    return "line " + std::to_string(n);
}

bool blank(std::string_view s)
{
    return collapse_whitespace(s).empty();
}

void expect_header(const std::vector<text::Line>& lines, std::string_view header, std::string_view file)
{
    if (lines.empty() || lines.front().content != header)
        throw DataError(std::string(file) + ": expected header '" + std::string(header) + "'");
}

} // namespace

std::vector<PublicationRecord> parse_publications(std::string_view text, Canonicalizer& names)
{
    const auto lines = text::lines(text);
    expect_header(lines, "pub_id\tyear\tjournal\tdoc_type\tcountries", "publications");

    std::vector<PublicationRecord> out;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (blank(line.content))
            continue;
        const auto cells = text::split(line.content, '\t');
        if (cells.size() != 5)
            throw DataError("publications " + at_line(line.number) + ": expected 5 columns, got " +
                            std::to_string(cells.size()));

        PublicationRecord rec;
        rec.pub_id = collapse_whitespace(cells[0]);
        if (rec.pub_id.empty())
            throw DataError("publications " + at_line(line.number) + ": empty pub_id");

        const auto year_cell = collapse_whitespace(cells[1]);
        long year = 0;
        try {
            year = text::parse_int(year_cell, "year");
        } catch (const DataError& e) {
            throw DataError("publications " + at_line(line.number) + ": " + e.what());
        }
        if (year < kMinYear || year > kMaxYear)
            throw DataError("publications " + at_line(line.number) + ": year " + year_cell +
                            " outside [1900, 2100]");
        rec.year = static_cast<Year>(year);

        rec.journal = names.canonical(cells[2]);
        rec.doc_type = DocType::parse(cells[3]);
        for (auto country : text::split(cells[4], ';')) {
            auto name = names.canonical(country);
            if (!name.empty())
                rec.countries.insert(std::move(name));
        }

        if (!seen.insert(rec.pub_id).second)
            throw DataError("publications " + at_line(line.number) + ": duplicate pub_id '" +
                            rec.pub_id + "'");
        out.push_back(std::move(rec));
    }
    return out;
}

std::set<CitationLink> parse_citations(std::string_view text,
                                       const std::vector<PublicationRecord>& publications,
                                       LinkPolicy policy, Diagnostics& diag)
{
    const auto lines = text::lines(text);
    expect_header(lines, "citing_id\tcited_id", "citations");

    std::unordered_set<std::string> ids;
    for (const auto& p : publications)
        ids.insert(p.pub_id);

    std::set<CitationLink> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (blank(line.content))
            continue;
        const auto cells = text::split(line.content, '\t');
        if (cells.size() != 2)
            throw DataError("citations " + at_line(line.number) + ": expected 2 columns, got " +
                            std::to_string(cells.size()));
        CitationLink link{collapse_whitespace(cells[0]), collapse_whitespace(cells[1])};
        if (link.citing_id.empty() || link.cited_id.empty())
            throw DataError("citations " + at_line(line.number) + ": empty id");

        const bool dangling = !ids.contains(link.citing_id) || !ids.contains(link.cited_id);
        if (dangling) {
            if (policy == LinkPolicy::Strict)
                throw DataError("citations " + at_line(line.number) + ": dangling link " +
                                link.citing_id + " -> " + link.cited_id);
            diag.count("dangling_links");
            continue;
        }
        if (link.citing_id == link.cited_id) {
            diag.count("self_citations_dropped");
            continue;
        }
        if (!out.insert(std::move(link)).second)
            diag.count("duplicate_links_dropped");
    }
    return out;
}

Corpus build_corpus(std::vector<PublicationRecord> publications, std::set<CitationLink> links,
                    std::optional<Year> observation_end, Diagnostics& diag)
{
    if (publications.empty())
        throw DataError("corpus has no publications");

    Corpus c;
    for (auto& p : publications) {
        auto id = p.pub_id;
        if (!c.publications_.emplace(id, std::move(p)).second)
            throw DataError("duplicate pub_id '" + id + "'");
    }

    std::optional<Year> latest_citing;
    for (const auto& link : links) {
        const auto* citing = c.find(link.citing_id);
        const auto* cited = c.find(link.cited_id);
        if (!citing || !cited)
            throw DataError("link " + link.citing_id + " -> " + link.cited_id +
                            " does not resolve");
        if (citing->year < cited->year)
            diag.count("citing_before_cited");
        c.reverse_index_[link.cited_id].insert(link.citing_id);
        latest_citing = std::max(latest_citing.value_or(citing->year), citing->year);
    }
    c.links_ = std::move(links);

    if (observation_end) {
        c.observation_end_ = *observation_end;
        if (latest_citing && *latest_citing > *observation_end)
            diag.note(Severity::Info, "observation_end_override",
                      "citing activity after " + std::to_string(*observation_end) + " is excluded");
    } else {
        if (!latest_citing)
            throw DataError("no citing activity: cannot infer observation end");
        c.observation_end_ = *latest_citing;
        diag.note(Severity::Warning, "final_year_incomplete",
                  "observation end " + std::to_string(c.observation_end_) +
                      " inferred from data; its citing counts may be incomplete");
    }
    diag.count("publications", c.publications_.size());
    diag.count("links", c.links_.size());
    return c;
}

std::string serialize_publications(const Corpus& corpus)
{
    std::ostringstream out;
    out << "pub_id\tyear\tjournal\tdoc_type\tcountries\n";
    for (const auto& [id, p] : corpus.publications()) {
        out << id << '\t' << p.year << '\t' << p.journal << '\t' << p.doc_type.label() << '\t';
        bool first = true;
        for (const auto& country : p.countries) {
            if (!first)
                out << ';';
            out << country;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

std::string serialize_citations(const Corpus& corpus)
{
    std::ostringstream out;
    out << "citing_id\tcited_id\n";
    for (const auto& link : corpus.links())
        out << link.citing_id << '\t' << link.cited_id << '\n';
    return out.str();
}

std::set<std::string> select_publications(const Corpus& corpus, const std::string& country,
                                          const std::set<std::string>& journals,
                                          const std::set<DocType>& doc_types)
{
    std::set<std::string> out;
    for (const auto& [id, p] : corpus.publications()) {
        if (p.countries.contains(country) && journals.contains(p.journal) &&
            doc_types.contains(p.doc_type))
            out.insert(id);
    }
    return out;
}

} // namespace remile
