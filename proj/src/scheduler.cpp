#include "contentfuzz/scheduler.hpp"

#include <stdexcept>
#include <string>

namespace cfuzz {

std::string_view to_string(SchedulerStrategy strategy) {
  switch (strategy) {
    case SchedulerStrategy::fifo:
      return "fifo";
    case SchedulerStrategy::random:
      return "random";
    case SchedulerStrategy::weighted:
      return "weighted";
    case SchedulerStrategy::priority:
      return "priority";
  }
  return "priority";
}

SchedulerStrategy parse_strategy(std::string_view raw) {
  if (raw == "fifo") return SchedulerStrategy::fifo;
  if (raw == "random") return SchedulerStrategy::random;
  if (raw == "weighted") return SchedulerStrategy::weighted;
  if (raw == "priority") return SchedulerStrategy::priority;
  throw ParseError("unknown scheduler '" + std::string(raw) + "'");
}

std::vector<double> weighted_probabilities(std::span<const double> keys) {
  std::vector<double> weights;
  weights.reserve(keys.size());
  double total = 0.0;
  for (double key : keys) {
    if (!(key > 0.0 && key <= 1.0)) {
      throw std::invalid_argument("seed key must lie in (0, 1], got " + std::to_string(key));
    }
    weights.push_back(1.0 / key);
    total += weights.back();
  }
  for (double& w : weights) w /= total;
  return weights;
}

SeedPool::SeedPool(SchedulerStrategy strategy, Rng rng, double stagnation_penalty)
    : strategy_(strategy), rng_(std::move(rng)), stagnation_penalty_(stagnation_penalty) {
  if (!(stagnation_penalty >= 0.0)) throw std::invalid_argument("stagnation penalty must be >= 0");
}

SeedId SeedPool::add(Seed seed) {
  if (!(seed.key > 0.0 && seed.key <= 1.0)) {
    throw std::invalid_argument("seed key must lie in (0, 1]");
  }
  const SeedId id = seeds_.size();
  seeds_.push_back(std::move(seed));
  penalties_.push_back(0);
  queue_.push_back(id);
  by_key_.emplace(seeds_.back().key, id);
  return id;
}

SeedId SeedPool::select() {
  if (seeds_.empty()) throw std::logic_error("select from an empty seed pool");
  switch (strategy_) {
    case SchedulerStrategy::fifo: {
      const SeedId id = queue_.front();
      queue_.pop_front();
      queue_.push_back(id);
      return id;
    }
    case SchedulerStrategy::random:
      return static_cast<SeedId>(rng_.below(seeds_.size()));
    case SchedulerStrategy::weighted: {
      std::vector<double> weights;
      weights.reserve(seeds_.size());
      for (const auto& s : seeds_) weights.push_back(1.0 / s.key);
      return rng_.weighted_index(weights);
    }
    case SchedulerStrategy::priority:
      return by_key_.begin()->second;
  }
  throw std::logic_error("unknown scheduler strategy");
}

double SeedPool::effective_key(SeedId id) const {
  return seeds_.at(id).key + static_cast<double>(penalties_.at(id)) * stagnation_penalty_;
}

void SeedPool::penalize(SeedId id) {
  if (id >= seeds_.size()) throw std::out_of_range("unknown seed id " + std::to_string(id));
  if (strategy_ != SchedulerStrategy::priority) return;
  by_key_.erase({effective_key(id), id});
  ++penalties_[id];
  by_key_.emplace(effective_key(id), id);
}

}  // namespace cfuzz
