#include <doctest.h>

#include <algorithm>
#include <map>

#include "contentfuzz/endpoint.hpp"
#include "contentfuzz/engine.hpp"
#include "contentfuzz/records.hpp"
#include "oracle_values.hpp"
#include "support/synthetic.hpp"

using namespace cfuzz;

namespace {

// Verdicts looked up by exact text; unknown text throws the configured error.
class ScriptedAnalyzer final : public Analyzer {
 public:
  explicit ScriptedAnalyzer(std::map<std::string, Verdict> verdicts)
      : verdicts_(std::move(verdicts)) {}
  Verdict analyze(const AnalyzerRequest& req) const override {
    const auto it = verdicts_.find(req.text);
    if (it != verdicts_.end()) return it->second;
    throw EndpointError(unknown_kind, "no verdict for '" + req.text + "'");
  }
  EndpointErrorKind unknown_kind = EndpointErrorKind::malformed;

 private:
  std::map<std::string, Verdict> verdicts_;
};

class ScriptedMutator final : public Mutator {
 public:
  explicit ScriptedMutator(std::vector<std::string> out) : out_(std::move(out)) {}
  MutationBatch rewrite(const MutationRequest& req, Rng) const override {
    return finalize_batch(req.seed_text, out_, req.candidate_count, req.temperature);
  }

 private:
  std::vector<std::string> out_;
};

const Lexicon& hate_lexicon() {
  static const Lexicon lex({{Lexicon::kDefaultKey, {{}, {"hate"}}}});
  return lex;
}

}  // namespace

TEST_CASE("precheck proceeds only when the analyzer agrees with the gold label") {
  const LexiconAnalyzer analyzer(hate_lexicon());
  auto pre = precheck({"p", "I hate X", "X", Stance::against, Lang::en}, analyzer);
  CHECK(pre.proceed);
  CHECK(pre.verdict.stance == Stance::against);

  pre = precheck({"p", "I like X", "X", Stance::favor, Lang::en}, analyzer);
  CHECK_FALSE(pre.proceed);
  CHECK(pre.verdict.stance == Stance::neutral);

  ScriptedAnalyzer failing({});
  failing.unknown_kind = EndpointErrorKind::transport;
  CHECK_THROWS_AS(precheck({"p", "t", "X", Stance::favor, Lang::en}, failing), EndpointError);
}

TEST_CASE("one-substitution escape is found at iteration 1") {
  const LexiconAnalyzer analyzer(hate_lexicon());
  const SubstitutionMutator mutator(SubstitutionTable({{Lang::en, {{"hate", "dislike"}}}}));
  const Post post{"trace", "I hate X", "X", Stance::against, Lang::en};
  FuzzConfig cfg;
  cfg.rng_seed = 9;

  const FuzzOutcome out = run_post(post, cfg, analyzer, mutator);
  CHECK(out.status == OutcomeStatus::escaped);
  CHECK(out.iterations_used == 1);
  CHECK(out.mutant_evaluations == 1);
  CHECK(out.original_stance == Stance::against);
  CHECK(std::abs(out.original_confidence - oracle::kSoftmax01HalfAgainst) < 1e-12);
  CHECK(out.rewrite_text == "I dislike X");
  CHECK(out.final_stance == Stance::neutral);
  REQUIRE(out.lineage.size() == 1);
  CHECK(out.lineage[0] == LineageEntry{0, "I hate X", 1.0});
  CHECK(out.rng_seed == session_seed(9, "trace"));
}

TEST_CASE("zero iterations exhausts immediately") {
  const LexiconAnalyzer analyzer(hate_lexicon());
  const SubstitutionMutator mutator(SubstitutionTable({{Lang::en, {{"hate", "dislike"}}}}));
  FuzzConfig cfg;
  cfg.max_iterations = 0;
  const auto out = run_post({"p", "I hate X", "X", Stance::against, Lang::en}, cfg, analyzer, mutator);
  CHECK(out.status == OutcomeStatus::exhausted);
  CHECK(out.iterations_used == 0);
  CHECK(out.mutant_evaluations == 0);
  CHECK_FALSE(out.rewrite_text.has_value());
  CHECK(out.lineage.empty());
}

TEST_CASE("empty batches exhaust the budget without touching energies") {
  const LexiconAnalyzer analyzer(hate_lexicon());
  const SubstitutionMutator mutator(SubstitutionTable({{Lang::en, {{"love", "like"}}}}));
  const Post post{"p", "I hate X", "X", Stance::against, Lang::en};
  FuzzConfig cfg;
  cfg.max_iterations = 25;
  const Verdict root = precheck(post, analyzer).verdict;
  FuzzSession session(post, cfg, analyzer, mutator, root);
  const auto out = session.run();
  CHECK(out.status == OutcomeStatus::exhausted);
  CHECK(out.iterations_used == 25);
  CHECK(out.mutant_evaluations == 0);
  for (double e : session.temperatures().energies()) CHECK(e == 1.0);
  // The root was penalized after each zero-success round.
  CHECK(session.pool().penalties(0) == 25);
}

TEST_CASE("admission is strict and energy uses the real batch size") {
  const Post post{"p", "root", "X", Stance::favor, Lang::en};
  ScriptedAnalyzer analyzer({{"root", {Stance::favor, 0.9}},
                             {"lower", {Stance::favor, 0.6}},
                             {"equal", {Stance::favor, 1.0}},
                             {"lowest", {Stance::favor, 0.5}}});
  const ScriptedMutator mutator({"lower", "equal", "lowest", "lower"});
  FuzzConfig cfg;
  cfg.max_iterations = 1;
  FuzzSession session(post, cfg, analyzer, mutator, {Stance::favor, 0.9});
  const auto out = session.run();
  CHECK(out.status == OutcomeStatus::exhausted);
  CHECK(out.mutant_evaluations == 3);  // dedup removed the second "lower"
  CHECK(session.pool().size() == 3);   // "equal" (1.0 == root key) was rejected
  CHECK(session.pool().seed(1).content == "lower");
  CHECK(session.pool().seed(2).content == "lowest");
  CHECK(session.pool().seed(2).parent == SeedId{0});
  CHECK(session.pool().seed(2).depth == 1);
  CHECK(session.pool().penalties(0) == 0);

  double boosted = 0.0;
  int changed = 0;
  for (double e : session.temperatures().energies()) {
    if (e != 1.0) {
      boosted = e;
      ++changed;
    }
  }
  CHECK(changed == 1);
  CHECK(boosted == 1.0 + 2.0 / 3.0);
}

TEST_CASE("escape check precedes admission and returns immediately") {
  const Post post{"p", "root", "X", Stance::favor, Lang::en};
  ScriptedAnalyzer analyzer({{"a", {Stance::favor, 0.5}},
                             {"flip", {Stance::against, 0.99}},
                             {"b", {Stance::favor, 0.4}}});
  const ScriptedMutator mutator({"a", "flip", "b"});
  FuzzConfig cfg;
  const auto out = fuzz(post, cfg, analyzer, mutator, {Stance::favor, 0.9});
  CHECK(out.status == OutcomeStatus::escaped);
  CHECK(out.mutant_evaluations == 2);
  CHECK(out.rewrite_text == "flip");
  CHECK(out.final_stance == Stance::against);
}

TEST_CASE("malformed analyzer responses discard the candidate but count") {
  const Post post{"p", "root", "X", Stance::favor, Lang::en};
  ScriptedAnalyzer analyzer({{"ok", {Stance::favor, 0.5}}});
  const ScriptedMutator mutator({"garbled", "ok"});
  FuzzConfig cfg;
  cfg.max_iterations = 2;
  FuzzSession session(post, cfg, analyzer, mutator, {Stance::favor, 0.9});
  const auto out = session.run();
  // Round 2 mutates "ok" itself, so only "garbled" survives the batch filter.
  CHECK(out.mutant_evaluations == 3);
  CHECK(session.pool().size() == 2);
}

TEST_CASE("fatal analyzer errors abort the session") {
  const Post post{"p", "root", "X", Stance::favor, Lang::en};
  ScriptedAnalyzer analyzer({});
  analyzer.unknown_kind = EndpointErrorKind::transport;
  const ScriptedMutator mutator({"x"});
  CHECK_THROWS_AS(fuzz(post, FuzzConfig{}, analyzer, mutator, {Stance::favor, 0.9}), EndpointError);

  analyzer.unknown_kind = EndpointErrorKind::credential;
  CHECK_THROWS_AS(fuzz(post, FuzzConfig{}, analyzer, mutator, {Stance::favor, 0.9}), EndpointError);
}

TEST_CASE("session invariants hold across the synthetic corpus") {
  const auto posts = cfuzz::testing::synthetic_corpus(60, 3);
  const LexiconAnalyzer analyzer(cfuzz::testing::synthetic_lexicon());
  const SubstitutionMutator mutator(cfuzz::testing::synthetic_table());

  for (auto strategy : {SchedulerStrategy::fifo, SchedulerStrategy::random,
                        SchedulerStrategy::weighted, SchedulerStrategy::priority}) {
    FuzzConfig cfg;
    cfg.scheduler = strategy;
    cfg.max_iterations = 20;
    cfg.rng_seed = 4;
    for (const auto& post : posts) {
      const auto pre = precheck(post, analyzer);
      if (!pre.proceed) continue;
      FuzzSession session(post, cfg, analyzer, mutator, pre.verdict);
      const auto out = session.run();
      const SeedPool& pool = session.pool();
      for (SeedId id = 1; id < pool.size(); ++id) {
        const Seed& s = pool.seed(id);
        const Seed& parent = pool.seed(*s.parent);
        CHECK(s.key < parent.key);
        CHECK(s.depth == parent.depth + 1);
        CHECK(s.stance == pool.seed(0).stance);
      }
      CHECK(out.iterations_used <= cfg.max_iterations);
      CHECK(out.mutant_evaluations <= cfg.max_iterations * cfg.candidate_count);
      if (out.status == OutcomeStatus::escaped) {
        CHECK(out.final_stance != out.original_stance);
        const Verdict again = analyzer.analyze({*out.rewrite_text, post.target, post.lang});
        CHECK(again.stance == *out.final_stance);
      }
    }
  }
}

TEST_CASE("sessions are deterministic and corpus runs ignore parallelism") {
  const auto posts = cfuzz::testing::synthetic_corpus(40, 11);
  const LexiconAnalyzer analyzer(cfuzz::testing::synthetic_lexicon());
  const SubstitutionMutator mutator(cfuzz::testing::synthetic_table());
  FuzzConfig cfg;
  cfg.max_iterations = 15;
  cfg.rng_seed = 123;
  cfg.config_hash = "abc";

  const auto serial = fuzz_corpus(posts, cfg, analyzer, mutator, 1);
  const auto again = fuzz_corpus(posts, cfg, analyzer, mutator, 1);
  const auto parallel = fuzz_corpus(posts, cfg, analyzer, mutator, 8);
  CHECK(to_jsonl(serial) == to_jsonl(again));
  CHECK(to_jsonl(serial) == to_jsonl(parallel));
  REQUIRE(serial.size() == posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    CHECK(serial[i].post_id == posts[i].id);
    CHECK(serial[i].config_hash == "abc");
  }
  CHECK(std::any_of(serial.begin(), serial.end(),
                    [](const FuzzOutcome& o) { return o.status == OutcomeStatus::skipped; }));
}

TEST_CASE("corpus driver records failing sessions as errors") {
  ScriptedAnalyzer analyzer({{"good", {Stance::favor, 0.9}}});
  analyzer.unknown_kind = EndpointErrorKind::transport;
  const ScriptedMutator mutator({});
  const std::vector<Post> posts = {{"a", "good", "X", Stance::favor, Lang::en},
                                   {"b", "unknown", "X", Stance::favor, Lang::en}};
  FuzzConfig cfg;
  cfg.max_iterations = 3;
  const auto out = fuzz_corpus(posts, cfg, analyzer, mutator, 2);
  CHECK(out[0].status == OutcomeStatus::exhausted);
  CHECK(out[1].status == OutcomeStatus::error);
  CHECK(out[1].error.find("unknown") != std::string::npos);
}
