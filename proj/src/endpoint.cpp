#include "contentfuzz/endpoint.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>

namespace cfuzz {

std::string_view to_string(EndpointErrorKind kind) {
  switch (kind) {
    case EndpointErrorKind::transport:
      return "transport";
    case EndpointErrorKind::malformed:
      return "malformed";
    case EndpointErrorKind::missing_logprobs:
      return "missing_logprobs";
    case EndpointErrorKind::credential:
      return "credential";
  }
  return "malformed";
}

EndpointConfig endpoint_config_from_json(const nlohmann::json& doc) {
  EndpointConfig cfg;
  cfg.base_url = doc.at("base_url").get<std::string>();
  cfg.model = doc.value("model", std::string{});
  cfg.api_key_env = doc.value("api_key_env", std::string{});
  cfg.path = doc.value("path", cfg.path);
  cfg.timeout_seconds = doc.value("timeout_seconds", cfg.timeout_seconds);
  cfg.max_attempts = doc.value("max_attempts", cfg.max_attempts);
  cfg.initial_backoff = std::chrono::milliseconds(
      doc.value("initial_backoff_ms", static_cast<int>(cfg.initial_backoff.count())));
  if (cfg.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  return cfg;
}

JsonEndpoint::JsonEndpoint(EndpointConfig config) : config_(std::move(config)) {
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint base_url needs a scheme: '" + url + "'");
  }
  const auto path_begin = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_begin);
  path_prefix_ = path_begin == std::string::npos ? "" : url.substr(path_begin);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

nlohmann::json JsonEndpoint::post(const nlohmann::json& body) const {
  std::string bearer;
  if (!config_.api_key_env.empty()) {
    const char* value = std::getenv(config_.api_key_env.c_str());
    if (value == nullptr || *value == '\0') {
      throw EndpointError(EndpointErrorKind::credential,
                          "credential variable " + config_.api_key_env + " is not set");
    }
    bearer = value;
  }

  auto backoff = config_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return post_once(body, bearer);
    } catch (const EndpointError& e) {
      if (!e.retryable() || attempt >= config_.max_attempts) throw;
    }
    std::this_thread::sleep_for(backoff);
    backoff = std::min(backoff * 2, config_.max_backoff);
  }
}

nlohmann::json JsonEndpoint::post_once(const nlohmann::json& body,
                                       const std::string& bearer) const {
  httplib::Client client(scheme_host_port_);
  const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
  const auto sec = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout - sec);
  client.set_connection_timeout(sec.count(), usec.count());
  client.set_read_timeout(sec.count(), usec.count());
  client.set_write_timeout(sec.count(), usec.count());

  httplib::Headers headers;
  if (!bearer.empty()) headers.emplace("Authorization", "Bearer " + bearer);

  const std::string url_path = path_prefix_ + config_.path;
  auto res = client.Post(url_path, headers, body.dump(), "application/json");
  if (!res) {
    throw EndpointError(EndpointErrorKind::transport, "POST " + config_.base_url + config_.path +
                                                          " failed: " +
                                                          httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw EndpointError(EndpointErrorKind::transport,
                        "endpoint returned HTTP " + std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw EndpointError(EndpointErrorKind::malformed,
                        "endpoint returned HTTP " + std::to_string(res->status) + ": " +
                            res->body.substr(0, 200));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw EndpointError(EndpointErrorKind::malformed,
                        std::string("endpoint response is not JSON: ") + e.what());
  }
}

}  // namespace cfuzz
