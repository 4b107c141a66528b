#ifdef EDUAGENT_WITH_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include <chrono>

#include "eduagent/http_provider.hpp"

namespace eduagent {
namespace {

// Splits "https://host:port/v1" into scheme://host:port and "/v1".
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorCode::config_error, "base_url must include a scheme: " + base_url);
  const auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {base_url, ""};
  std::string path = base_url.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {base_url.substr(0, path_start), path};
}

long estimate_tokens(const std::string& text) {
  return static_cast<long>(text.size() / 4) + 1;
}

}  // namespace

struct OpenAiHttpProvider::Impl {
  HttpProviderConfig config;
  std::string host;
  std::string base_path;
  httplib::Client client;

  explicit Impl(HttpProviderConfig cfg, std::pair<std::string, std::string> parts)
      : config(std::move(cfg)),
        host(parts.first),
        base_path(parts.second),
        client(host) {
    client.set_connection_timeout(0, config.timeout_ms * 1000L);
    client.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000L);
    client.set_write_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000L);
  }
};

OpenAiHttpProvider::OpenAiHttpProvider(HttpProviderConfig config) {
  auto parts = split_base_url(config.base_url);
#ifndef EDUAGENT_WITH_TLS
  if (parts.first.rfind("https://", 0) == 0)
    throw Error(ErrorCode::config_error,
                "built without TLS support; https base_url unavailable");
#endif
  impl_ = std::make_unique<Impl>(std::move(config), std::move(parts));
}

OpenAiHttpProvider::~OpenAiHttpProvider() = default;

CompletionResponse OpenAiHttpProvider::complete(const CompletionRequest& request) {
  nlohmann::json body{
      {"model", request.model},
      {"messages",
       nlohmann::json::array({{{"role", "system"}, {"content", request.system_prompt}},
                              {{"role", "user"}, {"content", request.user_prompt}}})},
      {"temperature", request.temperature},
      {"top_p", request.top_p},
      {"max_tokens", request.max_tokens}};
  if (impl_->config.send_top_k && request.top_k) body["top_k"] = *request.top_k;

  httplib::Headers headers;
  if (!impl_->config.api_key.empty())
    headers.emplace("Authorization", "Bearer " + impl_->config.api_key);

  const long prompt_estimate =
      estimate_tokens(request.system_prompt) + estimate_tokens(request.user_prompt);
  const auto started = std::chrono::steady_clock::now();
  httplib::Result result = impl_->client.Post(impl_->base_path + "/chat/completions",
                                              headers, body.dump(), "application/json");
  const long latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();

  if (!result) {
    const auto err = result.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           err == httplib::Error::Read || err == httplib::Error::Write;
    throw ProviderFailure(timed_out ? ErrorCode::timeout : ErrorCode::provider_unreachable,
                          "request failed: " + httplib::to_string(err),
                          /*transient=*/true, prompt_estimate);
  }
  if (result->status == 429 || result->status >= 500)
    throw ProviderFailure(ErrorCode::provider_unreachable,
                          "provider returned status " + std::to_string(result->status),
                          /*transient=*/true, prompt_estimate);
  if (result->status < 200 || result->status >= 300)
    throw ProviderFailure(ErrorCode::provider_rejected,
                          "provider rejected request with status " +
                              std::to_string(result->status) + ": " + result->body,
                          /*transient=*/false, prompt_estimate);

  nlohmann::json doc = nlohmann::json::parse(result->body, nullptr, false);
  if (doc.is_discarded() || !doc.contains("choices") || doc["choices"].empty())
    throw ProviderFailure(ErrorCode::provider_rejected,
                          "malformed completion payload", /*transient=*/false,
                          prompt_estimate);

  CompletionResponse response;
  response.text = doc["choices"][0].at("message").at("content").get<std::string>();
  response.provider = name();
  response.latency_ms = latency_ms;
  if (doc.contains("usage")) {
    response.prompt_tokens = doc["usage"].value("prompt_tokens", prompt_estimate);
    response.completion_tokens =
        doc["usage"].value("completion_tokens", estimate_tokens(response.text));
  } else {
    response.prompt_tokens = prompt_estimate;
    response.completion_tokens = estimate_tokens(response.text);
  }
  return response;
}

}  // namespace eduagent
