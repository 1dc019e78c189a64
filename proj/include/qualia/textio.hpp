#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qualia::text {

std::string trim(std::string_view s);

// Whitespace-separated tokens.
std::vector<std::string> split_ws(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, int& out);

// Locale-independent fixed formatting, e.g. fmt_fixed(0.9, 3) == "0.900".
std::string fmt_fixed(double v, int precision);

// Shortest-ish representation used by serializers ("%.6g").
std::string fmt_number(double v);

// Lowercased alphanumeric runs; everything else is a separator.
std::vector<std::string> tokens_lower(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace qualia::text
