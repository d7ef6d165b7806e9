#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace remile {

enum class Severity { Info, Warning };

struct Diagnostic {
    Severity severity = Severity::Info;
    std::string code;
    std::string message;
};

/// Collects non-fatal findings during ingestion and analysis.
///
/// Counters aggregate repeated events (one dangling link per line would be
/// noise); messages carry individual findings worth reading.
class Diagnostics {
public:
    void count(const std::string& code, std::size_t n = 1) { counters_[code] += n; }
    void note(Severity severity, std::string code, std::string message);

    std::size_t counter(const std::string& code) const;
    const std::map<std::string, std::size_t>& counters() const { return counters_; }
    const std::vector<Diagnostic>& messages() const { return messages_; }
    bool empty() const { return counters_.empty() && messages_.empty(); }

    void merge(const Diagnostics& other);

    /// One `key=value` line per counter, then one line per message.
    void write(std::ostream& out) const;

private:
    std::map<std::string, std::size_t> counters_;
    std::vector<Diagnostic> messages_;
};

} // namespace remile
