#include "contentfuzz/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "contentfuzz/text.hpp"

namespace cfuzz {

void AnalyzerRequest::validate() const {
  if (text::is_blank(text)) throw std::invalid_argument("analyzer request has empty text");
  if (text::is_blank(target)) throw std::invalid_argument("analyzer request has empty target");
}

StanceProbabilities softmax(const Logits& logits) {
  for (double z : logits) {
    if (!std::isfinite(z)) throw std::invalid_argument("non-finite logit");
  }
  const double max = *std::max_element(logits.begin(), logits.end());
  StanceProbabilities p{};
  double total = 0.0;
  for (std::size_t k = 0; k < kStanceCount; ++k) {
    p[k] = std::exp(logits[k] - max);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return p;
}

Stance argmax_stance(const Logits& logits) {
  const double max = *std::max_element(logits.begin(), logits.end());
  const auto at_max = [&](Stance s) { return logits[static_cast<std::size_t>(s)] == max; };
  if (at_max(Stance::neutral)) return Stance::neutral;
  if (at_max(Stance::favor)) return Stance::favor;
  return Stance::against;
}

Verdict classifier_confidence(const Logits& logits) {
  const StanceProbabilities p = softmax(logits);
  const Stance stance = argmax_stance(logits);
  return {stance, p[static_cast<std::size_t>(stance)]};
}

Verdict generative_confidence(const GenerativeResponse& response) {
  if (response.token_logprobs.empty()) {
    throw std::invalid_argument("generative response has no token logprobs");
  }
  double joint = 0.0;
  for (double l : response.token_logprobs) {
    if (std::isnan(l) || l > 0.0) {
      throw std::invalid_argument("token logprob must be <= 0, got " + std::to_string(l));
    }
    joint += l;
  }
  return {response.decoded_label, std::exp(joint)};
}

Lexicon::Lexicon(std::map<std::string, LexiconEntry> entries) : entries_(std::move(entries)) {}

Lexicon Lexicon::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("lexicon must be a JSON object");
  std::map<std::string, LexiconEntry> entries;
  for (const auto& [target, value] : doc.items()) {
    if (!value.is_object()) throw ParseError("lexicon entry '" + target + "' is not an object");
    LexiconEntry entry;
    if (value.contains("favor")) entry.favor = value.at("favor").get<std::vector<std::string>>();
    if (value.contains("against"))
      entry.against = value.at("against").get<std::vector<std::string>>();
    entries.emplace(target, std::move(entry));
  }
  return Lexicon(std::move(entries));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("lexicon " + path.string() + ": " + e.what());
  }
}

const LexiconEntry& Lexicon::lookup(const std::string& target) const {
  if (auto it = entries_.find(target); it != entries_.end()) return it->second;
  if (auto it = entries_.find(kDefaultKey); it != entries_.end()) return it->second;
  throw std::out_of_range("lexicon has no entry for target '" + target + "' and no default");
}

Logits lexicon_logits(const AnalyzerRequest& request, const Lexicon& lexicon) {
  const LexiconEntry& entry = lexicon.lookup(request.target);
  const auto hits = [&](const std::vector<std::string>& terms) {
    std::size_t n = 0;
    for (const auto& term : terms) n += text::count_term(request.text, term);
    return static_cast<double>(n);
  };
  return {hits(entry.favor), hits(entry.against), kLexiconNeutralBias};
}

Verdict mock_lexicon_analyze(const AnalyzerRequest& request, const Lexicon& lexicon) {
  return classifier_confidence(lexicon_logits(request, lexicon));
}

Verdict LexiconAnalyzer::analyze(const AnalyzerRequest& request) const {
  request.validate();
  return mock_lexicon_analyze(request, lexicon_);
}

}  // namespace cfuzz
