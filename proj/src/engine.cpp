#include "contentfuzz/engine.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "contentfuzz/endpoint.hpp"

namespace cfuzz {

void FuzzConfig::validate() const {
  if (candidate_count < 1) throw std::invalid_argument("candidate_count must be >= 1");
  if (!(stagnation_penalty >= 0.0)) throw std::invalid_argument("stagnation_penalty must be >= 0");
}

PrecheckResult precheck(const Post& post, const Analyzer& analyzer) {
  post.validate();
  const Verdict v = analyzer.analyze({post.text, post.target, post.lang});
  return {v.stance == post.gold_label, v};
}

std::uint64_t session_seed(std::uint64_t rng_seed, std::string_view post_id) {
  return derive_seed(rng_seed, post_id);
}

FuzzSession::FuzzSession(const Post& post, const FuzzConfig& config, const Analyzer& analyzer,
                         const Mutator& mutator, Verdict root)
    : post_(post),
      config_(config),
      analyzer_(analyzer),
      mutator_(mutator),
      root_(root),
      seed_(session_seed(config.rng_seed, post.id)),
      rng_(seed_),
      pool_(config.scheduler, Rng(rng_.next_u64()), config.stagnation_penalty),
      temperatures_(config.temperature) {}

std::vector<LineageEntry> FuzzSession::lineage_to(SeedId id) const {
  std::vector<LineageEntry> chain;
  std::optional<SeedId> cur = id;
  while (cur) {
    const Seed& s = pool_.seed(*cur);
    chain.push_back({s.iteration, s.content, s.key});
    cur = s.parent;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

FuzzOutcome FuzzSession::run() {
  config_.validate();

  FuzzOutcome out;
  out.post_id = post_.id;
  out.status = OutcomeStatus::exhausted;
  out.original_stance = root_.stance;
  out.original_confidence = root_.confidence;
  out.rng_seed = seed_;
  out.config_hash = config_.config_hash;

  Seed root;
  root.content = post_.text;
  root.stance = root_.stance;
  root.key = 1.0;
  root.measured_confidence = root_.confidence;
  pool_.add(std::move(root));

  for (std::size_t i = 1; i <= config_.max_iterations; ++i) {
    out.iterations_used = i;
    const SeedId selected = pool_.select();
    // Copy: admissions below may reallocate the pool.
    const Seed parent = pool_.seed(selected);

    const double t = temperatures_.sample(rng_);
    MutationRequest request{parent.content,  parent.stance, post_.target,
                            post_.lang,      t,             config_.candidate_count};
    const MutationBatch batch = mutator_.rewrite(request, Rng(rng_.next_u64()));

    std::size_t successes = 0;
    for (const auto& candidate : batch.candidates) {
      Verdict verdict;
      ++out.mutant_evaluations;
      try {
        verdict = analyzer_.analyze({candidate, post_.target, post_.lang});
      } catch (const EndpointError& e) {
        if (e.kind() == EndpointErrorKind::malformed ||
            e.kind() == EndpointErrorKind::missing_logprobs) {
          continue;
        }
        throw;
      }

      if (verdict.stance != parent.stance) {
        out.status = OutcomeStatus::escaped;
        out.rewrite_text = candidate;
        out.final_stance = verdict.stance;
        out.lineage = lineage_to(selected);
        return out;
      }
      if (verdict.confidence < parent.key) {
        Seed child;
        child.content = candidate;
        child.stance = parent.stance;
        child.key = verdict.confidence;
        child.measured_confidence = verdict.confidence;
        child.depth = parent.depth + 1;
        child.parent = selected;
        child.iteration = i;
        pool_.add(std::move(child));
        ++successes;
      }
    }

    if (!batch.candidates.empty() && !temperatures_.mode().fixed) {
      temperatures_.update_energy(t, successes, batch.candidates.size());
    }
    if (successes == 0) pool_.penalize(selected);
  }
  return out;
}

FuzzOutcome fuzz(const Post& post, const FuzzConfig& config, const Analyzer& analyzer,
                 const Mutator& mutator, Verdict root) {
  return FuzzSession(post, config, analyzer, mutator, root).run();
}

FuzzOutcome run_post(const Post& post, const FuzzConfig& config, const Analyzer& analyzer,
                     const Mutator& mutator) {
  const PrecheckResult pre = precheck(post, analyzer);
  if (pre.proceed) return fuzz(post, config, analyzer, mutator, pre.verdict);

  FuzzOutcome out;
  out.post_id = post.id;
  out.status = OutcomeStatus::skipped;
  out.original_stance = pre.verdict.stance;
  out.original_confidence = pre.verdict.confidence;
  out.rng_seed = session_seed(config.rng_seed, post.id);
  out.config_hash = config.config_hash;
  return out;
}

std::vector<FuzzOutcome> fuzz_corpus(std::span<const Post> posts, const FuzzConfig& config,
                                     const Analyzer& analyzer, const Mutator& mutator,
                                     std::size_t parallelism) {
  std::vector<FuzzOutcome> outcomes(posts.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < posts.size(); i = next++) {
      const Post& post = posts[i];
      try {
        outcomes[i] = run_post(post, config, analyzer, mutator);
      } catch (const std::exception& e) {
        FuzzOutcome err;
        err.post_id = post.id;
        err.status = OutcomeStatus::error;
        err.original_stance = post.gold_label;
        err.rng_seed = session_seed(config.rng_seed, post.id);
        err.config_hash = config.config_hash;
        err.error = e.what();
        outcomes[i] = std::move(err);
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(posts.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return outcomes;
}

}  // namespace cfuzz
