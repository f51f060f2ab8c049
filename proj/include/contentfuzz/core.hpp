#pragma once

// Domain vocabulary shared by every module: stance labels, posts, verdicts,
// pool seeds and per-post outcome records.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfuzz {

// Order is significant: logits and probability triples are indexed by it.
enum class Stance { favor = 0, against = 1, neutral = 2 };

inline constexpr std::size_t kStanceCount = 3;
inline constexpr Stance kAllStances[kStanceCount] = {Stance::favor, Stance::against,
                                                    Stance::neutral};

enum class Lang { en, zh };

// Dataset-native label vocabularies accepted at ingestion.
//   sem16:   FAVOR / AGAINST / NONE
//   vast:    0 (con) / 1 (pro) / 2 (neutral)
//   cstance: 支持 / 反对 / 中立
//   unified: favor / against / neutral, case-insensitive
enum class LabelScheme { sem16, vast, cstance, unified };

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string_view to_string(Stance stance);
std::string_view to_string(Lang lang);
std::string_view to_string(LabelScheme scheme);

Stance parse_label(std::string_view raw, LabelScheme scheme);
Lang parse_lang(std::string_view raw);
LabelScheme parse_scheme(std::string_view raw);

struct Post {
  std::string id;
  std::string text;
  std::string target;
  Stance gold_label = Stance::neutral;
  Lang lang = Lang::en;

  // Throws std::invalid_argument when text, target or id is blank.
  void validate() const;

  friend bool operator==(const Post&, const Post&) = default;
};

struct Verdict {
  Stance stance = Stance::neutral;
  double confidence = 0.0;  // (0, 1]
};

using SeedId = std::size_t;

struct Seed {
  std::string content;
  Stance stance = Stance::neutral;  // the root's analyzed stance, inherited
  double key = 1.0;                 // scheduling key
  std::optional<double> measured_confidence;
  std::size_t depth = 0;
  std::optional<SeedId> parent;
  std::size_t iteration = 0;  // iteration that admitted the seed, 0 for the root
};

enum class OutcomeStatus { escaped, exhausted, skipped, error };

std::string_view to_string(OutcomeStatus status);
OutcomeStatus parse_status(std::string_view raw);

struct LineageEntry {
  std::size_t iteration = 0;
  std::string content;
  double confidence = 0.0;

  friend bool operator==(const LineageEntry&, const LineageEntry&) = default;
};

struct FuzzOutcome {
  std::string post_id;
  OutcomeStatus status = OutcomeStatus::exhausted;
  Stance original_stance = Stance::neutral;
  double original_confidence = 0.0;
  std::optional<std::string> rewrite_text;
  std::optional<Stance> final_stance;
  std::size_t iterations_used = 0;
  std::size_t mutant_evaluations = 0;
  std::uint64_t rng_seed = 0;
  std::string config_hash;
  std::vector<LineageEntry> lineage;
  std::string error;  // diagnostic, status == error only

  friend bool operator==(const FuzzOutcome&, const FuzzOutcome&) = default;
};

}  // namespace cfuzz
