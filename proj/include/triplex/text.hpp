#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace triplex {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// split on a single character; keeps empty fields
std::vector<std::string> split(std::string_view s, char sep);
// split on runs of whitespace; no empty fields
std::vector<std::string> split_ws(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_punct_token(std::string_view t);

// canonical number formatting for perspective values: "1", "-1", "0.75", "0.5"
std::string fmt_score(double v);

// map '-', '_' and ' ' to a single separator character
std::string fold_separators(std::string_view s, char to);

std::uint64_t fnv1a(std::string_view s);

}  // namespace triplex
