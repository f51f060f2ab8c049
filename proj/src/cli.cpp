#include "contentfuzz/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "contentfuzz/config.hpp"
#include "contentfuzz/corpus.hpp"
#include "contentfuzz/engine.hpp"
#include "contentfuzz/metrics.hpp"
#include "contentfuzz/records.hpp"
#include "contentfuzz/text.hpp"

namespace cfuzz::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(OutcomeStatus status) {
  switch (status) {
    case OutcomeStatus::escaped:
      return kExitOk;
    case OutcomeStatus::exhausted:
      return kExitExhausted;
    case OutcomeStatus::skipped:
      return kExitSkipped;
    case OutcomeStatus::error:
      return kExitError;
  }
  return kExitError;
}

std::vector<double> read_pplr_ratios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open PPLr file " + path.string());
  std::vector<double> ratios;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_blank(line)) continue;
    const auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("pplr")) {
      throw ParseError("PPLr line " + std::to_string(line_no) + ": expected an object with pplr");
    }
    if (doc["pplr"].is_null()) continue;
    ratios.push_back(doc["pplr"].get<double>());
  }
  return ratios;
}

struct FuzzArgs {
  std::string config;
  std::string text;
  std::string target;
  std::string stance;
  std::string lang = "en";
  std::string corpus;
  std::string post_id;
};

int cmd_fuzz(const FuzzArgs& a, std::ostream& out) {
  const bool adhoc = !a.text.empty() || !a.target.empty() || !a.stance.empty();
  const bool from_corpus = !a.post_id.empty() || !a.corpus.empty();
  if (adhoc == from_corpus) {
    throw UsageError("give either --text/--target/--stance or --corpus/--post-id");
  }

  Post post;
  if (adhoc) {
    if (a.text.empty()) throw UsageError("--text is required");
    if (a.target.empty()) throw UsageError("--target is required");
    if (a.stance.empty()) throw UsageError("--stance is required");
    try {
      post = Post{"cli", a.text, a.target, parse_label(a.stance, LabelScheme::unified),
                  parse_lang(a.lang)};
      post.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    if (a.corpus.empty() || a.post_id.empty()) throw UsageError("--corpus and --post-id go together");
    const auto posts = load_corpus(a.corpus);
    const auto it = std::find_if(posts.begin(), posts.end(),
                                 [&](const Post& p) { return p.id == a.post_id; });
    if (it == posts.end()) throw std::runtime_error("no post with id '" + a.post_id + "' in corpus");
    post = *it;
  }

  const RunConfig cfg = load_run_config(a.config);
  const auto analyzer = make_analyzer(cfg);
  const auto mutator = make_mutator(cfg);
  const FuzzOutcome outcome = run_post(post, cfg.fuzz, *analyzer, *mutator);
  out << to_json(outcome).dump() << '\n';
  return exit_code_for(outcome.status);
}

struct BatchArgs {
  std::string config;
  std::string corpus;
  std::string out;
  std::size_t parallelism = 1;
};

int cmd_batch(const BatchArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_run_config(a.config);
  const auto posts = load_corpus(a.corpus);
  const auto analyzer = make_analyzer(cfg);
  const auto mutator = make_mutator(cfg);
  const auto outcomes = fuzz_corpus(posts, cfg.fuzz, *analyzer, *mutator, a.parallelism);
  write_outcomes(a.out, outcomes);
  for (const auto& o : outcomes) {
    if (o.status == OutcomeStatus::error) err << "post " << o.post_id << ": " << o.error << '\n';
  }
  out << to_json(summarize(outcomes)).dump() << '\n';
  return kExitOk;
}

int cmd_report(const std::string& outcomes_path, const std::string& pplr_path, std::ostream& out) {
  const auto outcomes = read_outcomes(outcomes_path);
  std::optional<std::vector<double>> ratios;
  if (!pplr_path.empty()) ratios = read_pplr_ratios(pplr_path);
  const auto summary =
      ratios ? summarize(outcomes, std::span<const double>(*ratios)) : summarize(outcomes);
  out << to_json(summary).dump() << '\n';
  return kExitOk;
}

struct TransferArgs {
  std::string outcomes;
  std::string config;
  std::string corpus;
  std::string target;
  std::string lang = "en";
};

int cmd_transfer(const TransferArgs& a, std::ostream& out) {
  if (a.corpus.empty() == a.target.empty()) {
    throw UsageError("transfer needs exactly one of --corpus or --target");
  }
  const auto outcomes = read_outcomes(a.outcomes);
  std::vector<Post> posts;
  if (!a.corpus.empty()) {
    posts = load_corpus(a.corpus);
  } else {
    Lang lang = Lang::en;
    try {
      lang = parse_lang(a.lang);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
    for (const auto& o : outcomes) {
      posts.push_back({o.post_id, o.rewrite_text.value_or("-"), a.target, o.original_stance, lang});
    }
  }
  const RunConfig cfg = load_run_config(a.config);
  const auto analyzer = make_analyzer(cfg);
  out << to_json(transfer_misclassification(outcomes, posts, *analyzer)).dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confidence-guided content fuzzing for stance analyzers", "contentfuzz"};
  app.require_subcommand(1);

  FuzzArgs fuzz_args;
  auto* fuzz = app.add_subcommand("fuzz", "Fuzz a single post");
  fuzz->add_option("--config", fuzz_args.config, "Run configuration")->required();
  fuzz->add_option("--text", fuzz_args.text, "Post text");
  fuzz->add_option("--target", fuzz_args.target, "Target topic");
  fuzz->add_option("--stance", fuzz_args.stance, "Gold stance: favor|against|neutral");
  fuzz->add_option("--lang", fuzz_args.lang, "Language: en|zh");
  fuzz->add_option("--corpus", fuzz_args.corpus, "Normalized corpus (with --post-id)");
  fuzz->add_option("--post-id", fuzz_args.post_id, "Post id within --corpus");

  BatchArgs batch_args;
  auto* batch = app.add_subcommand("batch", "Fuzz every post of a corpus");
  batch->add_option("--config", batch_args.config, "Run configuration")->required();
  batch->add_option("--corpus", batch_args.corpus, "Normalized corpus")->required();
  batch->add_option("--out", batch_args.out, "Outcome JSONL to (over)write")->required();
  batch->add_option("--parallelism", batch_args.parallelism, "Concurrent sessions")
      ->check(CLI::PositiveNumber);

  std::string report_outcomes;
  std::string report_pplr;
  auto* report = app.add_subcommand("report", "Summarize an outcome file");
  report->add_option("--outcomes", report_outcomes, "Outcome JSONL")->required();
  report->add_option("--pplr", report_pplr, "Evaluator JSONL with pplr ratios");

  TransferArgs transfer_args;
  auto* transfer = app.add_subcommand("transfer", "Re-analyze escaped rewrites with another analyzer");
  transfer->add_option("--outcomes", transfer_args.outcomes, "Outcome JSONL")->required();
  transfer->add_option("--config", transfer_args.config, "Config holding the other analyzer")
      ->required();
  transfer->add_option("--corpus", transfer_args.corpus, "Corpus supplying targets and languages");
  transfer->add_option("--target", transfer_args.target, "Single target for every rewrite");
  transfer->add_option("--lang", transfer_args.lang, "Language with --target");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == fuzz) return cmd_fuzz(fuzz_args, out);
    if (active == batch) return cmd_batch(batch_args, out, err);
    if (active == report) return cmd_report(report_outcomes, report_pplr, out);
    if (active == transfer) return cmd_transfer(transfer_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace cfuzz::cli
