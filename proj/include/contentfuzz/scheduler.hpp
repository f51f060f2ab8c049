#pragma once

#include <deque>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "contentfuzz/core.hpp"
#include "contentfuzz/random.hpp"

namespace cfuzz {

enum class SchedulerStrategy { fifo, random, weighted, priority };

std::string_view to_string(SchedulerStrategy strategy);
SchedulerStrategy parse_strategy(std::string_view raw);

inline constexpr double kDefaultStagnationPenalty = 0.01;

// P(s) = (1/key_s) / sum(1/key). Keys must lie in (0, 1].
std::vector<double> weighted_probabilities(std::span<const double> keys);

// Seed pool for one fuzzing session. Selection never removes a seed:
//   fifo     - return the front seed and rotate it to the back
//   random   - uniform over the pool
//   weighted - proportional to 1/key
//   priority - minimum effective key (key + penalties), earliest insertion on ties
class SeedPool {
 public:
  explicit SeedPool(SchedulerStrategy strategy, Rng rng,
                    double stagnation_penalty = kDefaultStagnationPenalty);

  SeedId add(Seed seed);
  SeedId select();

  // Raises the seed's effective key by the stagnation penalty. No-op unless the
  // strategy is priority. Throws std::out_of_range for unknown ids.
  void penalize(SeedId id);

  const Seed& seed(SeedId id) const { return seeds_.at(id); }
  double effective_key(SeedId id) const;
  std::size_t penalties(SeedId id) const { return penalties_.at(id); }

  std::size_t size() const noexcept { return seeds_.size(); }
  bool empty() const noexcept { return seeds_.empty(); }
  SchedulerStrategy strategy() const noexcept { return strategy_; }

 private:
  SchedulerStrategy strategy_;
  Rng rng_;
  double stagnation_penalty_;
  std::vector<Seed> seeds_;
  std::vector<std::size_t> penalties_;
  std::deque<SeedId> queue_;                        // fifo
  std::set<std::pair<double, SeedId>> by_key_;      // priority
};

}  // namespace cfuzz
