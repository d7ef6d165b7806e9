#include "remile/diagnostics.hpp"

namespace remile {

void Diagnostics::note(Severity severity, std::string code, std::string message)
{
    messages_.push_back({severity, std::move(code), std::move(message)});
}

std::size_t Diagnostics::counter(const std::string& code) const
{
    auto it = counters_.find(code);
    return it == counters_.end() ? 0 : it->second;
}

void Diagnostics::merge(const Diagnostics& other)
{
    for (const auto& [code, n] : other.counters_)
        counters_[code] += n;
    messages_.insert(messages_.end(), other.messages_.begin(), other.messages_.end());
}

void Diagnostics::write(std::ostream& out) const
{
    for (const auto& [code, n] : counters_)
        out << "count\t" << code << '\t' << n << '\n';
    for (const auto& m : messages_)
        out << (m.severity == Severity::Warning ? "warning" : "info") << '\t' << m.code << '\t'
            << m.message << '\n';
}

} // namespace remile
