#include "contentfuzz/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "contentfuzz/random.hpp"
#include "contentfuzz/text.hpp"

namespace cfuzz {

nlohmann::json to_json(const FuzzOutcome& o) {
  nlohmann::json lineage = nlohmann::json::array();
  for (const auto& e : o.lineage) {
    lineage.push_back({{"iteration", e.iteration}, {"content", e.content}, {"confidence", e.confidence}});
  }
  nlohmann::json doc = {
      {"post_id", o.post_id},
      {"status", to_string(o.status)},
      {"original_stance", to_string(o.original_stance)},
      {"original_confidence", o.original_confidence},
      {"rewrite_text", o.rewrite_text ? nlohmann::json(*o.rewrite_text) : nlohmann::json(nullptr)},
      {"final_stance",
       o.final_stance ? nlohmann::json(to_string(*o.final_stance)) : nlohmann::json(nullptr)},
      {"iterations_used", o.iterations_used},
      {"mutant_evaluations", o.mutant_evaluations},
      {"rng_seed", o.rng_seed},
      {"config_hash", o.config_hash},
      {"lineage", std::move(lineage)},
  };
  if (o.status == OutcomeStatus::error) doc["error"] = o.error;
  return doc;
}

FuzzOutcome outcome_from_json(const nlohmann::json& doc) {
  FuzzOutcome o;
  o.post_id = doc.at("post_id").get<std::string>();
  o.status = parse_status(doc.at("status").get<std::string>());
  o.original_stance = parse_label(doc.at("original_stance").get<std::string>(), LabelScheme::unified);
  o.original_confidence = doc.at("original_confidence").get<double>();
  if (const auto& r = doc.at("rewrite_text"); !r.is_null()) o.rewrite_text = r.get<std::string>();
  if (const auto& f = doc.at("final_stance"); !f.is_null()) {
    o.final_stance = parse_label(f.get<std::string>(), LabelScheme::unified);
  }
  o.iterations_used = doc.at("iterations_used").get<std::size_t>();
  o.mutant_evaluations = doc.at("mutant_evaluations").get<std::size_t>();
  o.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
  o.config_hash = doc.value("config_hash", std::string{});
  for (const auto& e : doc.at("lineage")) {
    o.lineage.push_back({e.at("iteration").get<std::size_t>(), e.at("content").get<std::string>(),
                         e.at("confidence").get<double>()});
  }
  o.error = doc.value("error", std::string{});

  const bool escaped = o.status == OutcomeStatus::escaped;
  if (escaped != o.rewrite_text.has_value() || escaped != o.final_stance.has_value()) {
    throw ParseError("rewrite_text and final_stance must be present exactly for escaped records");
  }
  return o;
}

std::string to_jsonl(std::span<const FuzzOutcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    out += to_json(o).dump();
    out += '\n';
  }
  return out;
}

std::vector<FuzzOutcome> parse_outcomes(std::istream& in) {
  std::vector<FuzzOutcome> outcomes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_blank(line)) continue;
    try {
      outcomes.push_back(outcome_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError("outcome line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return outcomes;
}

std::vector<FuzzOutcome> read_outcomes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open outcomes " + path.string());
  return parse_outcomes(in);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot replace " + path.string() + ": " + ec.message());
  }
}

void write_outcomes(const std::filesystem::path& path, std::span<const FuzzOutcome> outcomes) {
  write_file_atomic(path, to_jsonl(outcomes));
}

std::string content_hash(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace cfuzz
