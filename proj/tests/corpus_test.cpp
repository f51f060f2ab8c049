#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "contentfuzz/corpus.hpp"

using namespace cfuzz;

TEST_CASE("parse_corpus reads normalized lines in order") {
  std::istringstream in(
      R"({"id": "a", "text": "one", "target": "T", "label": "favor", "lang": "en"})" "\n"
      R"({"id": "b", "text": "two", "target": "T", "label": "FAVOR", "lang": "en"})" "\n"
      "\n"
      R"({"id": "c", "text": "三", "target": "话题", "label": "Neutral", "lang": "zh"})" "\n");
  const auto posts = parse_corpus(in);
  REQUIRE(posts.size() == 3);
  CHECK(posts[0].id == "a");
  CHECK(posts[1].gold_label == Stance::favor);
  CHECK(posts[2].lang == Lang::zh);
  CHECK(posts[2].gold_label == Stance::neutral);
}

TEST_CASE("parse_corpus errors name the offending line") {
  const auto error_of = [](const std::string& body) {
    std::istringstream in(body);
    try {
      parse_corpus(in);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string good =
      R"({"id": "a", "text": "one", "target": "T", "label": "favor", "lang": "en"})" "\n";

  auto msg = error_of(good + R"({"id": "b", "text": "two", "label": "favor", "lang": "en"})");
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("target") != std::string::npos);

  msg = error_of(good + good);
  CHECK(msg.find("duplicate") != std::string::npos);

  msg = error_of("not json\n");
  CHECK(msg.find("line 1") != std::string::npos);

  msg = error_of(R"({"id": "a", "text": "x", "target": "T", "label": "maybe", "lang": "en"})");
  CHECK(msg.find("maybe") != std::string::npos);

  msg = error_of(R"({"id": "a", "text": "  ", "target": "T", "label": "favor", "lang": "en"})");
  CHECK_FALSE(msg.empty());
}

TEST_CASE("normalize_record applies dataset label schemes") {
  CHECK(normalize_record({"1", "t", "T", "NONE", "en"}, LabelScheme::sem16).gold_label ==
        Stance::neutral);
  CHECK(normalize_record({"1", "t", "T", "反对", "zh"}, LabelScheme::cstance).gold_label ==
        Stance::against);
  CHECK(normalize_record({"1", "t", "T", "1", "en"}, LabelScheme::vast).gold_label ==
        Stance::favor);
  CHECK_THROWS_AS(normalize_record({"1", "t", "T", "pro", "en"}, LabelScheme::vast), ParseError);
}

TEST_CASE("write then load is the identity on normalized corpora") {
  const std::vector<Post> posts = {{"a", "quote \" and \\ and\nnewline", "T", Stance::favor, Lang::en},
                                   {"b", "中文", "目标", Stance::against, Lang::zh}};
  const auto path = std::filesystem::temp_directory_path() / "cfuzz_corpus_roundtrip.jsonl";
  write_corpus(path, posts);
  CHECK(load_corpus(path) == posts);
  std::filesystem::remove(path);
}

TEST_CASE("load_corpus reports missing files") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), std::runtime_error);
}
