#pragma once

// Stance analyzers and the two confidence formulas used as fuzzing feedback.
//
// Classifier analyzers report one logit per stance; confidence is the softmax
// probability of the argmax. Generative analyzers report the log-probability of
// every generated token; confidence is exp of their sum (the joint probability
// of the decoded label).

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "contentfuzz/core.hpp"

namespace cfuzz {

// Indexed by Stance: favor, against, neutral.
using Logits = std::array<double, kStanceCount>;
using StanceProbabilities = std::array<double, kStanceCount>;

struct AnalyzerRequest {
  std::string text;
  std::string target;
  Lang lang = Lang::en;

  void validate() const;
};

struct GenerativeResponse {
  Stance decoded_label = Stance::neutral;
  std::vector<double> token_logprobs;
};

// Max-subtracted softmax. Throws std::invalid_argument on non-finite logits.
StanceProbabilities softmax(const Logits& logits);

// Argmax with ties resolved to neutral when neutral is among the maxima, and
// otherwise to favor before against.
Stance argmax_stance(const Logits& logits);

Verdict classifier_confidence(const Logits& logits);
Verdict generative_confidence(const GenerativeResponse& response);

class Analyzer {
 public:
  virtual ~Analyzer() = default;
  // Must be safe to call concurrently.
  virtual Verdict analyze(const AnalyzerRequest& request) const = 0;
};

struct LexiconEntry {
  std::vector<std::string> favor;
  std::vector<std::string> against;
};

// Per-target term lists, with an optional "__default__" fallback entry.
class Lexicon {
 public:
  static constexpr const char* kDefaultKey = "__default__";

  Lexicon() = default;
  explicit Lexicon(std::map<std::string, LexiconEntry> entries);

  static Lexicon from_json(const nlohmann::json& doc);
  static Lexicon load(const std::filesystem::path& path);

  // Throws std::out_of_range when neither the target nor a default exists.
  const LexiconEntry& lookup(const std::string& target) const;

 private:
  std::map<std::string, LexiconEntry> entries_;
};

inline constexpr double kLexiconNeutralBias = 0.5;

// [favor hits, against hits, 0.5].
Logits lexicon_logits(const AnalyzerRequest& request, const Lexicon& lexicon);
Verdict mock_lexicon_analyze(const AnalyzerRequest& request, const Lexicon& lexicon);

// Deterministic offline analyzer backed by a lexicon.
class LexiconAnalyzer final : public Analyzer {
 public:
  explicit LexiconAnalyzer(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}
  Verdict analyze(const AnalyzerRequest& request) const override;

 private:
  Lexicon lexicon_;
};

}  // namespace cfuzz
