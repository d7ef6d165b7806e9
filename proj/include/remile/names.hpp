#pragma once

#include <istream>
#include <map>
#include <string>
#include <string_view>

namespace remile {

/// Lookup key for a name: trimmed, internal whitespace collapsed, ASCII lowercase.
std::string name_key(std::string_view raw);

/// Trim and collapse whitespace, keeping case.
std::string collapse_whitespace(std::string_view raw);

/// Resolves journal and country spellings to one canonical form.
///
/// Exact matching on the normalized key only; there is no fuzzy matching.
/// Names that hit neither the alias table nor a registered canonical keep the
/// first spelling seen for their key, so "nature" and "Nature" merge in file
/// order.
class Canonicalizer {
public:
    /// Empty table, no built-in names.
    Canonicalizer() = default;

    /// Nature, Science, the BRIC and N-11 countries and their common aliases.
    static Canonicalizer with_defaults();

    void add_canonical(std::string_view name);
    void add_alias(std::string_view alias, std::string_view canonical);

    /// Reads `alias\tcanonical` lines. A header line `alias\tcanonical` is skipped.
    void load_aliases(std::istream& in);

    std::string canonical(std::string_view raw);

    /// Resolution without learning new spellings.
    std::string lookup(std::string_view raw) const;

private:
    std::map<std::string, std::string> table_;
};

} // namespace remile
