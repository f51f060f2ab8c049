#pragma once

// Normalized corpus files: UTF-8 JSON lines of
//   {"id", "text", "target", "label": favor|against|neutral, "lang": en|zh}

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "contentfuzz/core.hpp"

namespace cfuzz {

struct RawRecord {
  std::string id;
  std::string text;
  std::string target;
  std::string label;
  std::string lang = "en";
};

// Maps a dataset-native label through `scheme` and validates the result.
Post normalize_record(const RawRecord& raw, LabelScheme scheme);

nlohmann::json to_json(const Post& post);

// Errors name the 1-based line number.
std::vector<Post> parse_corpus(std::istream& in);
std::vector<Post> load_corpus(const std::filesystem::path& path);

void write_corpus(const std::filesystem::path& path, std::span<const Post> posts);

}  // namespace cfuzz
