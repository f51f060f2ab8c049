#include <doctest.h>

#include "contentfuzz/core.hpp"

using namespace cfuzz;

TEST_CASE("parse_label maps each dataset vocabulary") {
  CHECK(parse_label("FAVOR", LabelScheme::sem16) == Stance::favor);
  CHECK(parse_label("AGAINST", LabelScheme::sem16) == Stance::against);
  CHECK(parse_label("NONE", LabelScheme::sem16) == Stance::neutral);

  CHECK(parse_label("1", LabelScheme::vast) == Stance::favor);
  CHECK(parse_label("0", LabelScheme::vast) == Stance::against);
  CHECK(parse_label("2", LabelScheme::vast) == Stance::neutral);

  CHECK(parse_label("支持", LabelScheme::cstance) == Stance::favor);
  CHECK(parse_label("反对", LabelScheme::cstance) == Stance::against);
  CHECK(parse_label("中立", LabelScheme::cstance) == Stance::neutral);

  CHECK(parse_label("Favor", LabelScheme::unified) == Stance::favor);
  CHECK(parse_label("AGAINST", LabelScheme::unified) == Stance::against);
  CHECK(parse_label("neutral", LabelScheme::unified) == Stance::neutral);
}

TEST_CASE("parse_label rejects out-of-vocabulary tokens and names them") {
  CHECK_THROWS_AS(parse_label("maybe", LabelScheme::unified), ParseError);
  CHECK_THROWS_AS(parse_label("", LabelScheme::unified), ParseError);
  CHECK_THROWS_AS(parse_label("favor", LabelScheme::sem16), ParseError);
  CHECK_THROWS_AS(parse_label("pro", LabelScheme::vast), ParseError);
  CHECK_THROWS_AS(parse_label("3", LabelScheme::vast), ParseError);
  CHECK_THROWS_AS(parse_label("favor", LabelScheme::cstance), ParseError);
  try {
    parse_label("maybe", LabelScheme::vast);
    FAIL("expected rejection");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("vast") != std::string::npos);
    CHECK(what.find("maybe") != std::string::npos);
  }
}

TEST_CASE("stance serialization round-trips through the unified scheme") {
  for (Stance s : kAllStances) {
    CHECK(parse_label(to_string(s), LabelScheme::unified) == s);
  }
}

TEST_CASE("language and status vocabularies") {
  CHECK(parse_lang("en") == Lang::en);
  CHECK(parse_lang("zh") == Lang::zh);
  CHECK_THROWS_AS(parse_lang("fr"), ParseError);
  for (auto s : {OutcomeStatus::escaped, OutcomeStatus::exhausted, OutcomeStatus::skipped,
                 OutcomeStatus::error}) {
    CHECK(parse_status(to_string(s)) == s);
  }
  CHECK(parse_scheme("cstance") == LabelScheme::cstance);
  CHECK_THROWS_AS(parse_scheme("x"), ParseError);
}

TEST_CASE("Post::validate rejects blank fields") {
  Post ok{"p1", "some text", "Topic", Stance::favor, Lang::en};
  CHECK_NOTHROW(ok.validate());

  Post blank_text = ok;
  blank_text.text = "   \n";
  CHECK_THROWS_AS(blank_text.validate(), std::invalid_argument);

  Post blank_target = ok;
  blank_target.target = "";
  CHECK_THROWS_AS(blank_target.validate(), std::invalid_argument);
}
