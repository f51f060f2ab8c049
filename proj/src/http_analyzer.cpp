#include "contentfuzz/http_analyzer.hpp"

#include <cmath>
#include <optional>

#include "contentfuzz/text.hpp"

namespace cfuzz {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw EndpointError(EndpointErrorKind::malformed, what);
}

}  // namespace

GenerativeAnalyzerConfig GenerativeAnalyzerConfig::from_json(const nlohmann::json& doc) {
  GenerativeAnalyzerConfig cfg;
  cfg.endpoint = endpoint_config_from_json(doc);
  cfg.system_prompt = doc.value("system_prompt", cfg.system_prompt);
  cfg.request_temperature = doc.value("temperature", 0.0);
  cfg.max_tokens = doc.value("max_tokens", cfg.max_tokens);
  cfg.guided_choice = doc.value("guided_choice", cfg.guided_choice);
  if (cfg.request_temperature != 0.0) {
    throw std::invalid_argument("analyzer temperature must be 0");
  }
  return cfg;
}

nlohmann::json build_analysis_body(const GenerativeAnalyzerConfig& config,
                                   const AnalyzerRequest& request) {
  nlohmann::json body = {
      {"model", config.endpoint.model},
      {"messages",
       nlohmann::json::array(
           {{{"role", "system"},
             {"content", text::substitute(config.system_prompt, "target", request.target)}},
            {{"role", "user"}, {"content", request.text}}})},
      {"temperature", config.request_temperature},
      {"logprobs", true},
      {"max_tokens", config.max_tokens},
  };
  if (config.guided_choice) {
    body["guided_choice"] = {"Favor", "Against", "Neutral"};
  }
  return body;
}

Stance match_label_word(std::string_view completion) {
  std::optional<std::size_t> best_pos;
  Stance best = Stance::neutral;
  for (Stance s : kAllStances) {
    if (auto pos = text::find_term(completion, to_string(s))) {
      if (!best_pos || *pos < *best_pos) {
        best_pos = pos;
        best = s;
      }
    }
  }
  if (!best_pos) malformed("no stance label in completion '" + std::string(completion) + "'");
  return best;
}

GenerativeResponse parse_generative_response(const nlohmann::json& response) {
  if (!response.is_object() || !response.contains("choices") || !response["choices"].is_array() ||
      response["choices"].empty()) {
    malformed("response has no choices");
  }
  const auto& choice = response["choices"][0];
  const auto message = choice.find("message");
  if (message == choice.end() || !message->contains("content") ||
      !(*message)["content"].is_string()) {
    malformed("response choice has no message content");
  }

  GenerativeResponse out;
  out.decoded_label = match_label_word((*message)["content"].get<std::string>());

  const auto logprobs = choice.find("logprobs");
  if (logprobs == choice.end() || !logprobs->is_object() || !logprobs->contains("content") ||
      !(*logprobs)["content"].is_array() || (*logprobs)["content"].empty()) {
    throw EndpointError(EndpointErrorKind::missing_logprobs,
                        "response carries no per-token logprobs");
  }
  for (const auto& token : (*logprobs)["content"]) {
    if (!token.is_object() || !token.contains("logprob") || !token["logprob"].is_number()) {
      throw EndpointError(EndpointErrorKind::missing_logprobs, "token entry without a logprob");
    }
    out.token_logprobs.push_back(token["logprob"].get<double>());
  }
  return out;
}

GenerativeHttpAnalyzer::GenerativeHttpAnalyzer(GenerativeAnalyzerConfig config)
    : config_(std::move(config)), endpoint_(config_.endpoint) {}

Verdict GenerativeHttpAnalyzer::analyze(const AnalyzerRequest& request) const {
  request.validate();
  const GenerativeResponse parsed =
      parse_generative_response(endpoint_.post(build_analysis_body(config_, request)));
  try {
    return generative_confidence(parsed);
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
}

ClassifierAnalyzerConfig ClassifierAnalyzerConfig::from_json(const nlohmann::json& doc) {
  ClassifierAnalyzerConfig cfg;
  nlohmann::json endpoint = doc;
  if (!endpoint.contains("path")) endpoint["path"] = "/classify";
  cfg.endpoint = endpoint_config_from_json(endpoint);
  return cfg;
}

nlohmann::json build_classify_body(const ClassifierAnalyzerConfig& config,
                                   const AnalyzerRequest& request) {
  return {{"model", config.endpoint.model},
          {"text", request.text},
          {"target", request.target},
          {"lang", to_string(request.lang)}};
}

Logits parse_classifier_response(const nlohmann::json& response) {
  if (!response.is_object() || !response.contains("logits")) malformed("response has no logits");
  const auto& raw = response["logits"];
  Logits logits{};
  if (raw.is_array()) {
    if (raw.size() != kStanceCount) malformed("expected 3 logits");
    for (std::size_t k = 0; k < kStanceCount; ++k) {
      if (!raw[k].is_number()) malformed("logit is not a number");
      logits[k] = raw[k].get<double>();
    }
  } else if (raw.is_object()) {
    for (Stance s : kAllStances) {
      const auto it = raw.find(std::string(to_string(s)));
      if (it == raw.end() || !it->is_number()) {
        malformed("missing logit for " + std::string(to_string(s)));
      }
      logits[static_cast<std::size_t>(s)] = it->get<double>();
    }
  } else {
    malformed("logits must be an array or object");
  }
  for (double z : logits) {
    if (!std::isfinite(z)) malformed("non-finite logit");
  }
  return logits;
}

ClassifierHttpAnalyzer::ClassifierHttpAnalyzer(ClassifierAnalyzerConfig config)
    : config_(std::move(config)), endpoint_(config_.endpoint) {}

Verdict ClassifierHttpAnalyzer::analyze(const AnalyzerRequest& request) const {
  request.validate();
  return classifier_confidence(
      parse_classifier_response(endpoint_.post(build_classify_body(config_, request))));
}

}  // namespace cfuzz
