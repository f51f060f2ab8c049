#pragma once

// Rewrite mutation: one paraphrase operator that yields a small batch of
// candidates per step.

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "contentfuzz/core.hpp"
#include "contentfuzz/endpoint.hpp"
#include "contentfuzz/random.hpp"

namespace cfuzz {

inline constexpr std::size_t kDefaultCandidateCount = 5;

struct MutationRequest {
  std::string seed_text;
  Stance stance = Stance::neutral;
  std::string target;
  Lang lang = Lang::en;
  double temperature = 1.0;  // [0, 2]
  std::size_t candidate_count = kDefaultCandidateCount;

  void validate() const;
};

struct MutationBatch {
  std::vector<std::string> candidates;
  double temperature_used = 0.0;
};

struct RewritePrompt {
  std::string system_instruction;
  std::string user_prompt;
};

RewritePrompt build_rewrite_prompt(const MutationRequest& request);

// Drops blank candidates, exact duplicates and copies of the seed, keeping
// first-seen order, and truncates to `limit`.
MutationBatch finalize_batch(std::string_view seed_text, std::vector<std::string> raw,
                             std::size_t limit, double temperature);

class Mutator {
 public:
  virtual ~Mutator() = default;
  // The generator is owned by the call. Must be safe to call concurrently.
  virtual MutationBatch rewrite(const MutationRequest& request, Rng rng) const = 0;
};

// Ordered (pattern, replacement) pairs per language.
class SubstitutionTable {
 public:
  using Rule = std::pair<std::string, std::string>;

  SubstitutionTable() = default;
  explicit SubstitutionTable(std::map<Lang, std::vector<Rule>> rules);

  // {"en": [["hate", "dislike"], ...], "zh": [...]}
  static SubstitutionTable from_json(const nlohmann::json& doc);
  static SubstitutionTable load(const std::filesystem::path& path);

  const std::vector<Rule>& rules(Lang lang) const;

 private:
  std::map<Lang, std::vector<Rule>> rules_;
};

// Each candidate applies up to 1 + floor(temperature) distinct rules, each
// drawn uniformly from the rules still applicable to the partially rewritten
// text and applied to the first whole-token match. Candidates where no rule
// applied are skipped.
MutationBatch mock_rewrite(const MutationRequest& request, const SubstitutionTable& table,
                           Rng rng);

class SubstitutionMutator final : public Mutator {
 public:
  explicit SubstitutionMutator(SubstitutionTable table) : table_(std::move(table)) {}
  MutationBatch rewrite(const MutationRequest& request, Rng rng) const override;

 private:
  SubstitutionTable table_;
};

struct LlmMutatorConfig {
  EndpointConfig endpoint;
  // One request with n = candidate_count; otherwise one request per candidate.
  bool multi_completion = true;
  // Sends reasoning_effort = "none" to switch off chain-of-thought tokens.
  bool disable_thinking = true;
  int max_tokens = 1024;
  // Merged verbatim into every request body.
  nlohmann::json extra_body = nlohmann::json::object();

  static LlmMutatorConfig from_json(const nlohmann::json& doc);
};

nlohmann::json build_rewrite_body(const LlmMutatorConfig& config, const MutationRequest& request,
                                  std::size_t completions);

// Message content of every choice, in order.
std::vector<std::string> parse_rewrite_response(const nlohmann::json& response);

class LlmMutator final : public Mutator {
 public:
  explicit LlmMutator(LlmMutatorConfig config);

  // Transport and malformed-response failures yield an empty batch; a missing
  // credential propagates.
  MutationBatch rewrite(const MutationRequest& request, Rng rng) const override;

 private:
  LlmMutatorConfig config_;
  JsonEndpoint endpoint_;
};

}  // namespace cfuzz
