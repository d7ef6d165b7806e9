#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace remile::text {

std::vector<std::string_view> split(std::string_view s, char sep);

/// Line iteration with 1-based numbers; strips a trailing '\r'.
struct Line {
    std::size_t number;
    std::string_view content;
};
std::vector<Line> lines(std::string_view doc);

/// Shortest representation that round-trips.
std::string format_double(double v);

/// Fixed number of decimals, "inf"/"-inf" for infinities.
std::string format_fixed(double v, int decimals);

/// Throws DataError naming `what` when `s` is not entirely an integer / real.
long parse_int(std::string_view s, std::string_view what);
double parse_real(std::string_view s, std::string_view what);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace remile::text
