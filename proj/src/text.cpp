#include "contentfuzz/text.hpp"

#include <algorithm>

namespace cfuzz::text {

namespace {

bool is_ascii_word(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9') || u == '_';
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool equal_at(std::string_view hay, std::size_t pos, std::string_view needle) {
  for (std::size_t i = 0; i < needle.size(); ++i) {
    if (lower(hay[pos + i]) != lower(needle[i])) return false;
  }
  return true;
}

}  // namespace

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

std::optional<std::size_t> find_term(std::string_view haystack, std::string_view term,
                                     std::size_t from) {
  if (term.empty() || haystack.size() < term.size()) return std::nullopt;
  for (std::size_t pos = from; pos + term.size() <= haystack.size(); ++pos) {
    if (!equal_at(haystack, pos, term)) continue;
    const bool left_ok =
        pos == 0 || !is_ascii_word(term.front()) || !is_ascii_word(haystack[pos - 1]);
    const std::size_t end = pos + term.size();
    const bool right_ok =
        end == haystack.size() || !is_ascii_word(term.back()) || !is_ascii_word(haystack[end]);
    if (left_ok && right_ok) return pos;
  }
  return std::nullopt;
}

std::size_t count_term(std::string_view haystack, std::string_view term) {
  std::size_t count = 0;
  std::size_t from = 0;
  while (auto pos = find_term(haystack, term, from)) {
    ++count;
    from = *pos + term.size();
  }
  return count;
}

std::optional<std::string> replace_first(std::string_view haystack, std::string_view term,
                                         std::string_view replacement) {
  const auto pos = find_term(haystack, term);
  if (!pos) return std::nullopt;
  std::string out;
  out.reserve(haystack.size() + replacement.size());
  out.append(haystack.substr(0, *pos));
  out.append(replacement);
  out.append(haystack.substr(*pos + term.size()));
  return out;
}

std::string substitute(std::string_view templ, std::string_view name, std::string_view value) {
  const std::string placeholder = "{" + std::string(name) + "}";
  std::string out;
  std::size_t from = 0;
  while (true) {
    const auto pos = templ.find(placeholder, from);
    if (pos == std::string_view::npos) break;
    out.append(templ.substr(from, pos - from));
    out.append(value);
    from = pos + placeholder.size();
  }
  out.append(templ.substr(from));
  return out;
}

}  // namespace cfuzz::text
