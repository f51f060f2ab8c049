#pragma once

// Synthetic stance corpus for the offline analyzer and mutator.
//
// Every fuzzable post carries 2-3 stance terms of its gold side, so an escape
// needs at least two substitutions. The substitution table holds three kinds
// of rules: "softening" rules that rewrite a stance term into a neutral word,
// "trap" rules that turn a filler word into a stance term, and cosmetic rules
// that change nothing the analyzer sees. Traps make large multi-rule rewrites
// risky, which is what gives temperature scheduling something to learn.

#include <string>
#include <vector>

#include "contentfuzz/analyzer.hpp"
#include "contentfuzz/core.hpp"
#include "contentfuzz/mutator.hpp"
#include "contentfuzz/random.hpp"

namespace cfuzz::testing {

inline const std::vector<std::string> kAgainstTerms = {"hate",    "awful",   "terrible",
                                                       "corrupt", "useless", "disaster"};
inline const std::vector<std::string> kFavorTerms = {"love",   "great",     "excellent",
                                                     "brilliant", "support", "wonderful"};

inline Lexicon synthetic_lexicon() {
  LexiconEntry entry{kFavorTerms, kAgainstTerms};
  return Lexicon({{Lexicon::kDefaultKey, entry}});
}

inline SubstitutionTable synthetic_table() {
  std::vector<SubstitutionTable::Rule> en = {
      // softening
      {"hate", "question"},
      {"awful", "unusual"},
      {"terrible", "debatable"},
      {"corrupt", "opaque"},
      {"useless", "limited"},
      {"disaster", "situation"},
      {"love", "notice"},
      {"great", "sizable"},
      {"excellent", "notable"},
      {"brilliant", "unexpected"},
      {"support", "discuss"},
      {"wonderful", "surprising"},
      // traps
      {"plan", "disaster"},
      {"people", "corrupt"},
      {"idea", "awful"},
      {"city", "wonderful"},
      {"team", "great"},
      {"news", "excellent"},
      // cosmetic
      {"really", "truly"},
      {"today", "now"},
      {"this", "that"},
  };
  return SubstitutionTable({{Lang::en, en}});
}

inline const std::vector<std::string> kFillers = {"plan",   "people", "idea", "city",  "team",
                                                  "news",   "really", "today", "this", "week",
                                                  "council", "policy"};

// `count` posts; roughly half against, half favor. Every tenth post has no
// stance terms but a non-neutral gold label, so its precheck fails.
inline std::vector<Post> synthetic_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Post> posts;
  for (std::size_t i = 0; i < count; ++i) {
    const bool against = i % 2 == 0;
    const bool unfuzzable = i % 10 == 9;
    const auto& terms = against ? kAgainstTerms : kFavorTerms;

    std::vector<std::string> words;
    if (!unfuzzable) {
      const std::size_t k = 2 + rng.below(2);
      std::vector<std::string> pool = terms;
      for (std::size_t j = 0; j < k; ++j) {
        const auto pick = rng.below(pool.size());
        words.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    const std::size_t fillers = 4 + rng.below(3);
    for (std::size_t j = 0; j < fillers; ++j) words.push_back(kFillers[rng.below(kFillers.size())]);
    for (std::size_t j = words.size(); j > 1; --j) std::swap(words[j - 1], words[rng.below(j)]);

    std::string text;
    for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
    posts.push_back({"syn-" + std::to_string(i), text, "Synthetic Topic",
                     against ? Stance::against : Stance::favor, Lang::en});
  }
  return posts;
}

}  // namespace cfuzz::testing
