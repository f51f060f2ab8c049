#include "contentfuzz/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cfuzz {

double escape_success_rate(std::span<const FuzzOutcome> outcomes) {
  std::size_t escaped = 0;
  std::size_t exhausted = 0;
  for (const auto& o : outcomes) {
    if (o.status == OutcomeStatus::escaped) ++escaped;
    if (o.status == OutcomeStatus::exhausted) ++exhausted;
  }
  if (escaped + exhausted == 0) {
    throw std::domain_error("escape success rate is undefined without fuzzed posts");
  }
  return static_cast<double>(escaped) / static_cast<double>(escaped + exhausted);
}

IterationStats describe(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("no values to describe");
  const auto n = values.size();
  std::sort(values.begin(), values.end());
  IterationStats s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  s.median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

IterationStats iteration_stats(std::span<const FuzzOutcome> outcomes) {
  std::vector<double> iterations;
  for (const auto& o : outcomes) {
    if (o.status == OutcomeStatus::escaped) {
      iterations.push_back(static_cast<double>(o.iterations_used));
    }
  }
  if (iterations.empty()) throw std::domain_error("iteration statistics need an escaped outcome");
  return describe(std::move(iterations));
}

double pplr_trimmed_mean(std::span<const double> ratios) {
  if (ratios.empty()) throw std::invalid_argument("no perplexity ratios");
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("perplexity ratios must be positive and finite");
    }
  }
  std::vector<double> sorted(ratios.begin(), ratios.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  // 2.5% per tail, nearest rank: ceil(0.025 n) <= r <= floor(0.975 n).
  const std::size_t lo = (n + 39) / 40;
  const std::size_t hi = (39 * n) / 40;
  if (lo < 1 || hi < lo) {
    return std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  }
  const double sum = std::accumulate(sorted.begin() + static_cast<std::ptrdiff_t>(lo - 1),
                                     sorted.begin() + static_cast<std::ptrdiff_t>(hi), 0.0);
  return sum / static_cast<double>(hi - lo + 1);
}

TransferResult transfer_misclassification(std::span<const FuzzOutcome> outcomes,
                                          std::span<const Post> posts, const Analyzer& other) {
  std::map<std::string, const Post*, std::less<>> by_id;
  for (const auto& p : posts) by_id.emplace(p.id, &p);

  TransferResult result;
  std::size_t preserved = 0;
  for (const auto& o : outcomes) {
    if (o.status != OutcomeStatus::escaped || !o.rewrite_text) continue;
    TransferVerdict tv{o.post_id, o.original_stance, std::nullopt, {}};
    try {
      const auto it = by_id.find(o.post_id);
      if (it == by_id.end()) throw std::out_of_range("no post with id '" + o.post_id + "'");
      tv.verdict = other.analyze({*o.rewrite_text, it->second->target, it->second->lang});
      ++result.evaluated;
      if (tv.verdict->stance == o.original_stance) ++preserved;
    } catch (const std::exception& e) {
      tv.error = e.what();
      ++result.failed;
    }
    result.verdicts.push_back(std::move(tv));
  }
  if (result.verdicts.empty()) throw std::domain_error("transfer needs an escaped outcome");
  if (result.evaluated == 0) throw std::domain_error("every transfer evaluation failed");
  result.misclassification =
      1.0 - static_cast<double>(preserved) / static_cast<double>(result.evaluated);
  return result;
}

MetricsSummary summarize(std::span<const FuzzOutcome> outcomes,
                         std::optional<std::span<const double>> pplr_ratios) {
  MetricsSummary s;
  for (const auto& o : outcomes) {
    if (o.status == OutcomeStatus::escaped) ++s.n_escaped;
    if (o.status == OutcomeStatus::escaped || o.status == OutcomeStatus::exhausted) ++s.n_corr;
  }
  if (s.n_corr > 0) s.esr = escape_success_rate(outcomes);
  if (s.n_escaped > 0) s.iterations = iteration_stats(outcomes);
  if (pplr_ratios && !pplr_ratios->empty()) s.pplr_trimmed = pplr_trimmed_mean(*pplr_ratios);
  return s;
}

namespace {

template <typename T>
nlohmann::json or_null(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const MetricsSummary& s) {
  nlohmann::json doc = {
      {"esr", or_null(s.esr)},
      {"n_corr", s.n_corr},
      {"n_escaped", s.n_escaped},
      {"iter_mean", s.iterations ? nlohmann::json(s.iterations->mean) : nlohmann::json(nullptr)},
      {"iter_median", s.iterations ? nlohmann::json(s.iterations->median) : nlohmann::json(nullptr)},
      {"iter_std", s.iterations ? nlohmann::json(s.iterations->std) : nlohmann::json(nullptr)},
  };
  if (s.pplr_trimmed) doc["pplr_trimmed"] = *s.pplr_trimmed;
  return doc;
}

nlohmann::json to_json(const TransferResult& r) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts) {
    nlohmann::json item = {{"post_id", v.post_id}, {"original_stance", to_string(v.original_stance)}};
    if (v.verdict) {
      item["predicted_stance"] = to_string(v.verdict->stance);
      item["confidence"] = v.verdict->confidence;
    } else {
      item["error"] = v.error;
    }
    verdicts.push_back(std::move(item));
  }
  return {{"misclassification", r.misclassification},
          {"n_evaluated", r.evaluated},
          {"n_failed", r.failed},
          {"verdicts", std::move(verdicts)}};
}

}  // namespace cfuzz
