#include "contentfuzz/core.hpp"

#include <string>

#include "contentfuzz/text.hpp"

namespace cfuzz {

std::string_view to_string(Stance stance) {
  switch (stance) {
    case Stance::favor:
      return "favor";
    case Stance::against:
      return "against";
    case Stance::neutral:
      return "neutral";
  }
  return "neutral";
}

std::string_view to_string(Lang lang) { return lang == Lang::zh ? "zh" : "en"; }

std::string_view to_string(LabelScheme scheme) {
  switch (scheme) {
    case LabelScheme::sem16:
      return "sem16";
    case LabelScheme::vast:
      return "vast";
    case LabelScheme::cstance:
      return "cstance";
    case LabelScheme::unified:
      return "unified";
  }
  return "unified";
}

namespace {

[[noreturn]] void reject_label(std::string_view raw, LabelScheme scheme) {
  throw ParseError("unknown " + std::string(to_string(scheme)) + " label '" + std::string(raw) +
                   "'");
}

}  // namespace

Stance parse_label(std::string_view raw, LabelScheme scheme) {
  if (raw.empty()) throw ParseError("empty stance label");
  switch (scheme) {
    case LabelScheme::sem16:
      if (raw == "FAVOR") return Stance::favor;
      if (raw == "AGAINST") return Stance::against;
      if (raw == "NONE") return Stance::neutral;
      break;
    case LabelScheme::vast:
      if (raw == "0") return Stance::against;
      if (raw == "1") return Stance::favor;
      if (raw == "2") return Stance::neutral;
      break;
    case LabelScheme::cstance:
      if (raw == "支持") return Stance::favor;
      if (raw == "反对") return Stance::against;
      if (raw == "中立") return Stance::neutral;
      break;
    case LabelScheme::unified: {
      const std::string lower = text::ascii_lower(raw);
      if (lower == "favor") return Stance::favor;
      if (lower == "against") return Stance::against;
      if (lower == "neutral") return Stance::neutral;
      break;
    }
  }
  reject_label(raw, scheme);
}

Lang parse_lang(std::string_view raw) {
  if (raw == "en") return Lang::en;
  if (raw == "zh") return Lang::zh;
  throw ParseError("unsupported language tag '" + std::string(raw) + "'");
}

LabelScheme parse_scheme(std::string_view raw) {
  if (raw == "sem16") return LabelScheme::sem16;
  if (raw == "vast") return LabelScheme::vast;
  if (raw == "cstance") return LabelScheme::cstance;
  if (raw == "unified") return LabelScheme::unified;
  throw ParseError("unknown label scheme '" + std::string(raw) + "'");
}

void Post::validate() const {
  if (text::is_blank(id)) throw std::invalid_argument("post id is empty");
  if (text::is_blank(text)) throw std::invalid_argument("post '" + id + "' has empty text");
  if (text::is_blank(target)) throw std::invalid_argument("post '" + id + "' has empty target");
}

std::string_view to_string(OutcomeStatus status) {
  switch (status) {
    case OutcomeStatus::escaped:
      return "escaped";
    case OutcomeStatus::exhausted:
      return "exhausted";
    case OutcomeStatus::skipped:
      return "skipped";
    case OutcomeStatus::error:
      return "error";
  }
  return "error";
}

OutcomeStatus parse_status(std::string_view raw) {
  if (raw == "escaped") return OutcomeStatus::escaped;
  if (raw == "exhausted") return OutcomeStatus::exhausted;
  if (raw == "skipped") return OutcomeStatus::skipped;
  if (raw == "error") return OutcomeStatus::error;
  throw ParseError("unknown outcome status '" + std::string(raw) + "'");
}

}  // namespace cfuzz
