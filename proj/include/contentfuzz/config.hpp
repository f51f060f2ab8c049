#pragma once

// Run configuration: one JSON document that fully determines a run.
//
//   {
//     "scheduler": "priority",            // fifo | random | weighted | priority
//     "temperature": "scheduled",         // or "fixed:1.0"
//     "max_iterations": 300,
//     "candidate_count": 5,
//     "rng_seed": 42,
//     "stagnation_penalty": 0.01,
//     "analyzer": {"kind": "mock", "lexicon": "lexicon.json"},
//     "mutator":  {"kind": "mock", "table": "substitutions.json"}
//   }
//
// Analyzer kinds: mock, generative-http, classifier-http. Mutator kinds: mock,
// llm-http. Relative file paths resolve against the config file's directory.
// Credentials are referenced by environment variable name only.

#include <filesystem>
#include <memory>
#include <string_view>

#include <json.hpp>

#include "contentfuzz/analyzer.hpp"
#include "contentfuzz/engine.hpp"
#include "contentfuzz/mutator.hpp"

namespace cfuzz {

struct RunConfig {
  FuzzConfig fuzz;  // fuzz.config_hash is the hash of the file contents
  nlohmann::json analyzer = nlohmann::json::object();
  nlohmann::json mutator = nlohmann::json::object();
  std::filesystem::path base_dir;
};

RunConfig parse_run_config(std::string_view contents, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

std::unique_ptr<Analyzer> make_analyzer(const RunConfig& config);
std::unique_ptr<Mutator> make_mutator(const RunConfig& config);

}  // namespace cfuzz
