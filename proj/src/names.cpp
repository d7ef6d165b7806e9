#include "remile/names.hpp"

#include "remile/error.hpp"
#include "remile/text.hpp"

#include <cctype>
#include <iterator>
#include <string>

namespace remile {

namespace {

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

} // namespace

std::string collapse_whitespace(std::string_view raw)
{
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space)
            out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::string name_key(std::string_view raw)
{
    auto s = collapse_whitespace(raw);
    for (auto& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

Canonicalizer Canonicalizer::with_defaults()
{
    Canonicalizer c;
    for (const char* name : {"Nature", "Science", "Brazil", "Russia", "India", "China", "Bangladesh",
                             "Egypt", "Indonesia", "Iran", "Mexico", "Nigeria", "Pakistan",
                             "Philippines", "South Korea", "Turkey", "Vietnam"})
        c.add_canonical(name);
    c.add_alias("Russian Federation", "Russia");
    c.add_alias("Peoples R China", "China");
    c.add_alias("People's Republic of China", "China");
    c.add_alias("Korea, Republic of", "South Korea");
    c.add_alias("Republic of Korea", "South Korea");
    c.add_alias("Korea", "South Korea");
    c.add_alias("Iran, Islamic Republic of", "Iran");
    c.add_alias("Viet Nam", "Vietnam");
    c.add_alias("Turkiye", "Turkey");
    c.add_alias("Türkiye", "Turkey");
    return c;
}

void Canonicalizer::add_canonical(std::string_view name)
{
    auto spelled = collapse_whitespace(name);
    if (spelled.empty())
        throw ConfigError("empty canonical name");
    table_[name_key(spelled)] = spelled;
}

void Canonicalizer::add_alias(std::string_view alias, std::string_view canonical)
{
    auto target = collapse_whitespace(canonical);
    if (target.empty() || name_key(alias).empty())
        throw ConfigError("alias entries must be non-empty");
    // A canonical that is itself an alias resolves through it.
    auto it = table_.find(name_key(target));
    if (it != table_.end())
        target = it->second;
    table_[name_key(target)] = target;
    table_[name_key(alias)] = target;
}

void Canonicalizer::load_aliases(std::istream& in)
{
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    for (const auto& line : text::lines(all)) {
        if (collapse_whitespace(line.content).empty())
            continue;
        auto cells = text::split(line.content, '\t');
        if (cells.size() != 2)
            throw DataError("aliases line " + std::to_string(line.number) + ": expected 2 columns");
        if (line.number == 1 && name_key(cells[0]) == "alias" && name_key(cells[1]) == "canonical")
            continue;
        add_alias(cells[0], cells[1]);
    }
}

std::string Canonicalizer::canonical(std::string_view raw)
{
    auto key = name_key(raw);
    if (key.empty())
        return {};
    auto [it, inserted] = table_.try_emplace(key, collapse_whitespace(raw));
    return it->second;
}

std::string Canonicalizer::lookup(std::string_view raw) const
{
    auto it = table_.find(name_key(raw));
    return it == table_.end() ? collapse_whitespace(raw) : it->second;
}

} // namespace remile
