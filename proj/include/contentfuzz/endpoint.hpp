#pragma once

// JSON-over-HTTP client shared by the remote analyzers and the LLM mutator.

#include <chrono>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace cfuzz {

enum class EndpointErrorKind {
  transport,         // connection failure, timeout, 429 or 5xx: retried
  malformed,         // unusable response body or unexpected status: fatal per request
  missing_logprobs,  // response lacks per-token log probabilities: fatal per request
  credential,        // configured credential variable is unset: fatal for the session
};

std::string_view to_string(EndpointErrorKind kind);

class EndpointError : public std::runtime_error {
 public:
  EndpointError(EndpointErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  EndpointErrorKind kind() const noexcept { return kind_; }
  bool retryable() const noexcept { return kind_ == EndpointErrorKind::transport; }

 private:
  EndpointErrorKind kind_;
};

struct EndpointConfig {
  std::string base_url;  // e.g. "http://127.0.0.1:8000/v1"
  std::string path = "/chat/completions";
  std::string model;
  std::string api_key_env;  // variable NAME; empty disables the Authorization header
  double timeout_seconds = 60.0;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::milliseconds max_backoff{4000};
};

EndpointConfig endpoint_config_from_json(const nlohmann::json& doc);

class JsonEndpoint {
 public:
  explicit JsonEndpoint(EndpointConfig config);

  const EndpointConfig& config() const noexcept { return config_; }

  // POSTs body and returns the parsed response. Transport failures are retried
  // up to max_attempts with doubling backoff; the last one is rethrown.
  nlohmann::json post(const nlohmann::json& body) const;

 private:
  nlohmann::json post_once(const nlohmann::json& body, const std::string& bearer) const;

  EndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

}  // namespace cfuzz
