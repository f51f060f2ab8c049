#include "contentfuzz/mutator.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "contentfuzz/text.hpp"

namespace cfuzz {

namespace {

constexpr std::string_view kRewriteSystemEn =
    "You are a helpful writing assistant and an avid social media user. "
    "Your role is to help the content creator refine their post to make it more engaging and "
    "shareable. "
    "Improve the writing and flow while **keeping the post's original meaning intact**. "
    "**Do not change the author's stance** (their position or opinion on the topic) **or the "
    "target topic** of the post. "
    "Make sure to **preserve the original tone, style, and sentiment** of the writing, "
    "maintaining the author's voice. "
    "Only **make minimal edits**: the goal is to polish the text, not to overhaul it. "
    "Output **only** the revised text, and do not include any explanations. "
    "Always **keep the content in the same language** as the original post (no translation or "
    "dialect change). "
    "Do not extensively use emojis or hashtags unless they were present in the original text.";

constexpr std::string_view kRewriteTemplateEn =
    "The current text is {stance} towards the {target}. "
    "Without changing its meaning, please rewrite the following text:\n"
    "```\n"
    "{text}\n"
    "```";

constexpr std::string_view kRewriteSystemZh =
    "你是一个乐于助人的写作助理，同时也是一个活跃的社交媒体用户。"
    "你的角色是帮助内容创作作者润色他们的帖子，让他们的帖子变得更加有吸引力和传播性。"
    "请在保持帖子本身原意不变的前提下，提高写作和文章流畅度。"
    "请不要改变作者的原本立场（他们对主题的态度或观点）或帖子的目标主题。"
    "请务必保留原有的语气、风格和观点，保持作者个人表达。"
    "只进行最小幅度的修改：目标是润色文本，而不是重写。"
    "输出只提供修改后的文本，不要附加任何解释。"
    "从始至终保持和原文相同的语言（不要翻译或者转换方言）。"
    "除非是原文中已经有的表情符号或话题标签，否则不要过度使用表情符号或话题标签。";

constexpr std::string_view kRewriteTemplateZh =
    "当前的文本关于{target}是{stance}的。"
    "在不改变其含义的情况下，请重新写以下文本：\n"
    "```\n"
    "{text}\n"
    "```";

std::string_view stance_word_zh(Stance stance) {
  switch (stance) {
    case Stance::favor:
      return "支持";
    case Stance::against:
      return "反对";
    case Stance::neutral:
      return "中立";
  }
  return "中立";
}

}  // namespace

void MutationRequest::validate() const {
  if (text::is_blank(seed_text)) throw std::invalid_argument("mutation seed text is empty");
  if (text::is_blank(target)) throw std::invalid_argument("mutation target is empty");
  if (candidate_count < 1) throw std::invalid_argument("candidate_count must be >= 1");
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw std::invalid_argument("temperature must lie in [0, 2]");
  }
}

RewritePrompt build_rewrite_prompt(const MutationRequest& request) {
  request.validate();
  const bool zh = request.lang == Lang::zh;
  const std::string_view stance = zh ? stance_word_zh(request.stance) : to_string(request.stance);
  std::string user = std::string(zh ? kRewriteTemplateZh : kRewriteTemplateEn);
  user = text::substitute(user, "stance", stance);
  user = text::substitute(user, "target", request.target);
  // Text last, so braces inside the post are left alone.
  user = text::substitute(user, "text", request.seed_text);
  return {std::string(zh ? kRewriteSystemZh : kRewriteSystemEn), std::move(user)};
}

MutationBatch finalize_batch(std::string_view seed_text, std::vector<std::string> raw,
                             std::size_t limit, double temperature) {
  MutationBatch batch;
  batch.temperature_used = temperature;
  std::set<std::string, std::less<>> seen;
  for (auto& candidate : raw) {
    if (batch.candidates.size() >= limit) break;
    if (text::is_blank(candidate) || candidate == seed_text) continue;
    if (!seen.insert(candidate).second) continue;
    batch.candidates.push_back(std::move(candidate));
  }
  return batch;
}

SubstitutionTable::SubstitutionTable(std::map<Lang, std::vector<Rule>> rules)
    : rules_(std::move(rules)) {}

SubstitutionTable SubstitutionTable::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("substitution table must be a JSON object");
  std::map<Lang, std::vector<Rule>> rules;
  for (const auto& [lang, list] : doc.items()) {
    auto& out = rules[parse_lang(lang)];
    for (const auto& pair : list) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError("substitution rules must be [pattern, replacement] pairs");
      }
      out.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
      if (out.back().first.empty()) throw ParseError("empty substitution pattern");
    }
  }
  return SubstitutionTable(std::move(rules));
}

SubstitutionTable SubstitutionTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open substitution table " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("substitution table " + path.string() + ": " + e.what());
  }
}

const std::vector<SubstitutionTable::Rule>& SubstitutionTable::rules(Lang lang) const {
  static const std::vector<Rule> kEmpty;
  const auto it = rules_.find(lang);
  return it == rules_.end() ? kEmpty : it->second;
}

MutationBatch mock_rewrite(const MutationRequest& request, const SubstitutionTable& table,
                           Rng rng) {
  request.validate();
  const auto& rules = table.rules(request.lang);
  const auto substitutions = 1 + static_cast<std::size_t>(std::floor(request.temperature));

  std::vector<std::string> raw;
  for (std::size_t c = 0; c < request.candidate_count; ++c) {
    std::string candidate = request.seed_text;
    std::vector<bool> used(rules.size(), false);
    std::size_t applied = 0;
    for (std::size_t step = 0; step < substitutions; ++step) {
      std::vector<std::size_t> applicable;
      for (std::size_t r = 0; r < rules.size(); ++r) {
        if (!used[r] && text::find_term(candidate, rules[r].first)) applicable.push_back(r);
      }
      if (applicable.empty()) break;
      const std::size_t pick = applicable[rng.below(applicable.size())];
      used[pick] = true;
      candidate = *text::replace_first(candidate, rules[pick].first, rules[pick].second);
      ++applied;
    }
    if (applied > 0) raw.push_back(std::move(candidate));
  }
  return finalize_batch(request.seed_text, std::move(raw), request.candidate_count,
                        request.temperature);
}

MutationBatch SubstitutionMutator::rewrite(const MutationRequest& request, Rng rng) const {
  return mock_rewrite(request, table_, rng);
}

LlmMutatorConfig LlmMutatorConfig::from_json(const nlohmann::json& doc) {
  LlmMutatorConfig cfg;
  cfg.endpoint = endpoint_config_from_json(doc);
  cfg.multi_completion = doc.value("multi_completion", cfg.multi_completion);
  cfg.disable_thinking = doc.value("disable_thinking", cfg.disable_thinking);
  cfg.max_tokens = doc.value("max_tokens", cfg.max_tokens);
  if (doc.contains("extra_body")) {
    cfg.extra_body = doc.at("extra_body");
    if (!cfg.extra_body.is_object()) throw ParseError("extra_body must be an object");
  }
  return cfg;
}

nlohmann::json build_rewrite_body(const LlmMutatorConfig& config, const MutationRequest& request,
                                  std::size_t completions) {
  const RewritePrompt prompt = build_rewrite_prompt(request);
  nlohmann::json body = {
      {"model", config.endpoint.model},
      {"messages", nlohmann::json::array({{{"role", "system"}, {"content", prompt.system_instruction}},
                                          {{"role", "user"}, {"content", prompt.user_prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens", config.max_tokens},
      {"n", completions},
  };
  if (config.disable_thinking) body["reasoning_effort"] = "none";
  body.update(config.extra_body);
  return body;
}

std::vector<std::string> parse_rewrite_response(const nlohmann::json& response) {
  if (!response.is_object() || !response.contains("choices") || !response["choices"].is_array()) {
    throw EndpointError(EndpointErrorKind::malformed, "response has no choices");
  }
  std::vector<std::string> out;
  for (const auto& choice : response["choices"]) {
    const auto message = choice.find("message");
    if (message == choice.end() || !message->contains("content") ||
        !(*message)["content"].is_string()) {
      continue;
    }
    out.emplace_back(text::trim((*message)["content"].get<std::string>()));
  }
  return out;
}

LlmMutator::LlmMutator(LlmMutatorConfig config)
    : config_(std::move(config)), endpoint_(config_.endpoint) {}

MutationBatch LlmMutator::rewrite(const MutationRequest& request, Rng /*rng*/) const {
  request.validate();
  std::vector<std::string> raw;
  try {
    if (config_.multi_completion) {
      raw = parse_rewrite_response(
          endpoint_.post(build_rewrite_body(config_, request, request.candidate_count)));
    } else {
      for (std::size_t i = 0; i < request.candidate_count; ++i) {
        auto one = parse_rewrite_response(endpoint_.post(build_rewrite_body(config_, request, 1)));
        raw.insert(raw.end(), one.begin(), one.end());
      }
    }
  } catch (const EndpointError& e) {
    if (e.kind() == EndpointErrorKind::credential) throw;
    // Keep whatever per-candidate calls already returned.
  }
  return finalize_batch(request.seed_text, std::move(raw), request.candidate_count,
                        request.temperature);
}

}  // namespace cfuzz
