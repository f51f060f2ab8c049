#pragma once

// Outcome record persistence. Field names are fixed:
//   post_id status original_stance original_confidence rewrite_text
//   final_stance iterations_used mutant_evaluations rng_seed config_hash
//   lineage[{iteration, content, confidence}]
// Error records add an "error" field.

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "contentfuzz/core.hpp"

namespace cfuzz {

nlohmann::json to_json(const FuzzOutcome& outcome);
FuzzOutcome outcome_from_json(const nlohmann::json& doc);

std::string to_jsonl(std::span<const FuzzOutcome> outcomes);
std::vector<FuzzOutcome> parse_outcomes(std::istream& in);
std::vector<FuzzOutcome> read_outcomes(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
void write_outcomes(const std::filesystem::path& path, std::span<const FuzzOutcome> outcomes);

// 16 hex digits of the FNV-1a hash of `bytes`.
std::string content_hash(std::string_view bytes);

}  // namespace cfuzz
