#include "contentfuzz/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "contentfuzz/http_analyzer.hpp"
#include "contentfuzz/records.hpp"

namespace cfuzz {

namespace {

const std::set<std::string> kTopLevelKeys = {
    "scheduler", "temperature", "max_iterations",     "candidate_count",
    "rng_seed",  "analyzer",    "stagnation_penalty", "mutator"};

void reject_inline_credentials(const nlohmann::json& block, const char* name) {
  for (const char* key : {"api_key", "token", "password"}) {
    if (block.contains(key)) {
      throw ParseError(std::string(name) + "." + key +
                       ": credentials must be supplied through api_key_env");
    }
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string kind_of(const nlohmann::json& block, const char* name) {
  if (!block.is_object() || !block.contains("kind")) {
    throw ParseError(std::string("config has no ") + name + ".kind");
  }
  return block.at("kind").get<std::string>();
}

}  // namespace

RunConfig parse_run_config(std::string_view contents, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(contents);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kTopLevelKeys.contains(key)) throw ParseError("unknown config key '" + key + "'");
  }

  RunConfig cfg;
  cfg.base_dir = base_dir;
  try {
    FuzzConfig& f = cfg.fuzz;
    f.scheduler = parse_strategy(doc.value("scheduler", std::string("priority")));
    f.temperature = TemperatureMode::parse(doc.value("temperature", std::string("scheduled")));
    f.max_iterations = doc.value("max_iterations", kDefaultMaxIterations);
    f.candidate_count = doc.value("candidate_count", kDefaultCandidateCount);
    f.rng_seed = doc.value("rng_seed", std::uint64_t{0});
    f.stagnation_penalty = doc.value("stagnation_penalty", kDefaultStagnationPenalty);
    f.config_hash = content_hash(contents);
    f.validate();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("config: ") + e.what());
  }

  if (doc.contains("analyzer")) {
    cfg.analyzer = doc.at("analyzer");
    reject_inline_credentials(cfg.analyzer, "analyzer");
  }
  if (doc.contains("mutator")) {
    cfg.mutator = doc.at("mutator");
    reject_inline_credentials(cfg.mutator, "mutator");
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

std::unique_ptr<Analyzer> make_analyzer(const RunConfig& config) {
  const auto& block = config.analyzer;
  const std::string kind = kind_of(block, "analyzer");
  try {
    if (kind == "mock") {
      return std::make_unique<LexiconAnalyzer>(
          Lexicon::load(resolve(config.base_dir, block.at("lexicon").get<std::string>())));
    }
    if (kind == "generative-http") {
      return std::make_unique<GenerativeHttpAnalyzer>(GenerativeAnalyzerConfig::from_json(block));
    }
    if (kind == "classifier-http") {
      return std::make_unique<ClassifierHttpAnalyzer>(ClassifierAnalyzerConfig::from_json(block));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("analyzer config: ") + e.what());
  }
  throw ParseError("unknown analyzer kind '" + kind + "'");
}

std::unique_ptr<Mutator> make_mutator(const RunConfig& config) {
  const auto& block = config.mutator;
  const std::string kind = kind_of(block, "mutator");
  try {
    if (kind == "mock") {
      return std::make_unique<SubstitutionMutator>(
          SubstitutionTable::load(resolve(config.base_dir, block.at("table").get<std::string>())));
    }
    if (kind == "llm-http") {
      return std::make_unique<LlmMutator>(LlmMutatorConfig::from_json(block));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mutator config: ") + e.what());
  }
  throw ParseError("unknown mutator kind '" + kind + "'");
}

}  // namespace cfuzz
