#pragma once

// Aggregate statistics over outcome records.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "contentfuzz/analyzer.hpp"
#include "contentfuzz/core.hpp"

namespace cfuzz {

// escaped / (escaped + exhausted). Skipped and error records are ignored.
// Throws std::domain_error when no record was fuzzed.
double escape_success_rate(std::span<const FuzzOutcome> outcomes);

struct IterationStats {
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
};

// Over iterations_used of escaped records. Throws std::domain_error if none.
IterationStats iteration_stats(std::span<const FuzzOutcome> outcomes);
IterationStats describe(std::vector<double> values);

// Mean over sorted ranks ceil(n/40)..floor(39n/40) (1-based); the plain mean
// when that range is empty.
double pplr_trimmed_mean(std::span<const double> ratios);

struct TransferVerdict {
  std::string post_id;
  Stance original_stance = Stance::neutral;
  std::optional<Verdict> verdict;  // empty when the analyzer failed
  std::string error;
};

struct TransferResult {
  double misclassification = 0.0;  // 1 - Acc over evaluated rewrites
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  std::vector<TransferVerdict> verdicts;
};

// Re-analyzes every escaped rewrite with `other`; Acc is the fraction still
// labelled with the original stance. Target and language come from the post
// with the matching id. Rewrites the analyzer fails on are excluded from Acc
// and counted in `failed`. Throws std::domain_error when nothing escaped or
// every rewrite failed.
TransferResult transfer_misclassification(std::span<const FuzzOutcome> outcomes,
                                          std::span<const Post> posts, const Analyzer& other);

struct MetricsSummary {
  std::optional<double> esr;
  std::size_t n_corr = 0;
  std::size_t n_escaped = 0;
  std::optional<IterationStats> iterations;
  std::optional<double> pplr_trimmed;
};

MetricsSummary summarize(std::span<const FuzzOutcome> outcomes,
                         std::optional<std::span<const double>> pplr_ratios = std::nullopt);

// {esr, n_corr, n_escaped, iter_mean, iter_median, iter_std[, pplr_trimmed]}
nlohmann::json to_json(const MetricsSummary& summary);
nlohmann::json to_json(const TransferResult& result);

}  // namespace cfuzz
