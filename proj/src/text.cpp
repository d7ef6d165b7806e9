#include "remile/text.hpp"

#include "remile/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace remile::text {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<Line> lines(std::string_view doc)
{
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start < doc.size()) {
        auto end = doc.find('\n', start);
        if (end == std::string_view::npos)
            end = doc.size();
        auto line = doc.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        out.push_back({++number, line});
        start = end + 1;
    }
    return out;
}

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

long parse_int(std::string_view s, std::string_view what)
{
    long v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last)
        throw DataError(std::string(what) + ": not an integer: '" + std::string(s) + "'");
    return v;
}

double parse_real(std::string_view s, std::string_view what)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw DataError(std::string(what) + ": not a number: '" + std::string(s) + "'");
    return v;
}

std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

} // namespace remile::text
