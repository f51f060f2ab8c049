#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

// Term matching used by the offline analyzer and mutator.
//
// Matching is ASCII case-insensitive. A match is "whole-token" when it is not
// glued to an adjacent ASCII word character ([A-Za-z0-9_]) on either side.
// Non-ASCII bytes never form a boundary, so CJK terms match as substrings.
namespace cfuzz::text {

std::string ascii_lower(std::string_view s);
std::string_view trim(std::string_view s);
bool is_blank(std::string_view s);

std::optional<std::size_t> find_term(std::string_view haystack, std::string_view term,
                                     std::size_t from = 0);

// Non-overlapping whole-token occurrences.
std::size_t count_term(std::string_view haystack, std::string_view term);

// Replaces the first whole-token occurrence. Returns nullopt when absent.
std::optional<std::string> replace_first(std::string_view haystack, std::string_view term,
                                         std::string_view replacement);

// Replaces every "{name}" placeholder.
std::string substitute(std::string_view templ, std::string_view name, std::string_view value);

}  // namespace cfuzz::text
