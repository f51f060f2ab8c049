#pragma once

// Confidence-guided fuzzing loop.
//
// A session starts from a post the analyzer already labels correctly. Each
// iteration selects a seed, samples a temperature, asks the mutator for a
// batch of rewrites and analyzes every candidate in order. The first
// candidate whose stance differs from the root's escapes. A candidate whose
// confidence is strictly below the selected seed's key joins the pool.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contentfuzz/analyzer.hpp"
#include "contentfuzz/core.hpp"
#include "contentfuzz/mutator.hpp"
#include "contentfuzz/scheduler.hpp"
#include "contentfuzz/temperature.hpp"

namespace cfuzz {

inline constexpr std::size_t kDefaultMaxIterations = 300;

struct FuzzConfig {
  std::size_t max_iterations = kDefaultMaxIterations;
  std::size_t candidate_count = kDefaultCandidateCount;
  SchedulerStrategy scheduler = SchedulerStrategy::priority;
  TemperatureMode temperature = TemperatureMode::scheduled();
  std::uint64_t rng_seed = 0;
  double stagnation_penalty = kDefaultStagnationPenalty;
  std::string config_hash;  // copied into every outcome

  void validate() const;
};

struct PrecheckResult {
  bool proceed = false;
  Verdict verdict;
};

// Proceed iff the analyzer's stance equals the gold label.
PrecheckResult precheck(const Post& post, const Analyzer& analyzer);

// Session generator seed for one post.
std::uint64_t session_seed(std::uint64_t rng_seed, std::string_view post_id);

class FuzzSession {
 public:
  // root is the precheck verdict; its stance is the escape-comparison stance.
  FuzzSession(const Post& post, const FuzzConfig& config, const Analyzer& analyzer,
              const Mutator& mutator, Verdict root);

  FuzzOutcome run();

  const SeedPool& pool() const noexcept { return pool_; }
  const TemperatureState& temperatures() const noexcept { return temperatures_; }

 private:
  std::vector<LineageEntry> lineage_to(SeedId id) const;

  const Post& post_;
  const FuzzConfig& config_;
  const Analyzer& analyzer_;
  const Mutator& mutator_;
  Verdict root_;
  std::uint64_t seed_;
  Rng rng_;
  SeedPool pool_;
  TemperatureState temperatures_;
};

FuzzOutcome fuzz(const Post& post, const FuzzConfig& config, const Analyzer& analyzer,
                 const Mutator& mutator, Verdict root);

// Precheck followed by fuzz; a failed precheck yields a skipped outcome.
FuzzOutcome run_post(const Post& post, const FuzzConfig& config, const Analyzer& analyzer,
                     const Mutator& mutator);

// One outcome per post in input order. Sessions that throw become error
// outcomes. Results do not depend on parallelism.
std::vector<FuzzOutcome> fuzz_corpus(std::span<const Post> posts, const FuzzConfig& config,
                                     const Analyzer& analyzer, const Mutator& mutator,
                                     std::size_t parallelism = 1);

}  // namespace cfuzz
