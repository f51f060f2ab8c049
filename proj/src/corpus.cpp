#include "contentfuzz/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "contentfuzz/records.hpp"
#include "contentfuzz/text.hpp"

namespace cfuzz {

Post normalize_record(const RawRecord& raw, LabelScheme scheme) {
  Post post{raw.id, raw.text, raw.target, parse_label(raw.label, scheme), parse_lang(raw.lang)};
  post.validate();
  return post;
}

nlohmann::json to_json(const Post& post) {
  return {{"id", post.id},
          {"text", post.text},
          {"target", post.target},
          {"label", to_string(post.gold_label)},
          {"lang", to_string(post.lang)}};
}

namespace {

std::string required_string(const nlohmann::json& obj, const char* field) {
  const auto it = obj.find(field);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + field + "\"");
  if (!it->is_string()) throw ParseError(std::string("field \"") + field + "\" is not a string");
  return it->get<std::string>();
}

}  // namespace

std::vector<Post> parse_corpus(std::istream& in) {
  std::vector<Post> posts;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_blank(line)) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      if (!obj.is_object()) throw ParseError("record is not a JSON object");
      RawRecord raw{required_string(obj, "id"), required_string(obj, "text"),
                    required_string(obj, "target"), required_string(obj, "label"),
                    required_string(obj, "lang")};
      Post post = normalize_record(raw, LabelScheme::unified);
      if (!ids.insert(post.id).second) throw ParseError("duplicate id '" + post.id + "'");
      posts.push_back(std::move(post));
    } catch (const std::exception& e) {
      throw ParseError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return posts;
}

std::vector<Post> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path.string());
  return parse_corpus(in);
}

void write_corpus(const std::filesystem::path& path, std::span<const Post> posts) {
  std::ostringstream out;
  for (const auto& post : posts) out << to_json(post).dump() << '\n';
  write_file_atomic(path, out.str());
}

}  // namespace cfuzz
