#pragma once

// Remote analyzers: a chat-completions generative analyzer scored from token
// logprobs, and a classifier sidecar that returns raw logits.

#include <string>
#include <string_view>

#include <json.hpp>

#include "contentfuzz/analyzer.hpp"
#include "contentfuzz/endpoint.hpp"

namespace cfuzz {

// {target} is substituted per request.
inline constexpr std::string_view kStanceSystemPrompt =
    "You are a precise stance classifier. "
    "Decide whether the author's attitude is Favor / Against / Neutral towards the target "
    "{target}. "
    "Be conservative: if unclear, choose Neutral. "
    "ONLY output one word chosen from Favor, Against, Neutral.";

struct GenerativeAnalyzerConfig {
  EndpointConfig endpoint;
  std::string system_prompt{kStanceSystemPrompt};
  double request_temperature = 0.0;  // must stay 0
  int max_tokens = 4;
  // Sends "guided_choice" so servers with constrained decoding only emit a
  // label word. Without it the first label word in the reply is used.
  bool guided_choice = true;

  static GenerativeAnalyzerConfig from_json(const nlohmann::json& doc);
};

nlohmann::json build_analysis_body(const GenerativeAnalyzerConfig& config,
                                   const AnalyzerRequest& request);

// Earliest whole-word favor/against/neutral in a completion. Throws
// EndpointError(malformed) when none is present.
Stance match_label_word(std::string_view completion);

// Reads choices[0].message.content and choices[0].logprobs.content[*].logprob.
GenerativeResponse parse_generative_response(const nlohmann::json& response);

class GenerativeHttpAnalyzer final : public Analyzer {
 public:
  explicit GenerativeHttpAnalyzer(GenerativeAnalyzerConfig config);
  Verdict analyze(const AnalyzerRequest& request) const override;

 private:
  GenerativeAnalyzerConfig config_;
  JsonEndpoint endpoint_;
};

// Sidecar protocol: POST {model, text, target, lang} and receive
// {"logits": [favor, against, neutral]} or {"logits": {"favor": .., ...}}.
struct ClassifierAnalyzerConfig {
  EndpointConfig endpoint;

  static ClassifierAnalyzerConfig from_json(const nlohmann::json& doc);
};

nlohmann::json build_classify_body(const ClassifierAnalyzerConfig& config,
                                   const AnalyzerRequest& request);
Logits parse_classifier_response(const nlohmann::json& response);

class ClassifierHttpAnalyzer final : public Analyzer {
 public:
  explicit ClassifierHttpAnalyzer(ClassifierAnalyzerConfig config);
  Verdict analyze(const AnalyzerRequest& request) const override;

 private:
  ClassifierAnalyzerConfig config_;
  JsonEndpoint endpoint_;
};

}  // namespace cfuzz
