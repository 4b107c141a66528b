#pragma once

#include <memory>
#include <string>

#include "eduagent/gateway.hpp"

namespace eduagent {

struct HttpProviderConfig {
  std::string base_url;  // e.g. "https://api.openai.com/v1"
  std::string api_key;
  int timeout_ms = 30000;
  bool send_top_k = false;  // most OpenAI-compatible servers reject top_k
};

/// Chat-completions client for OpenAI-compatible endpoints. Connection
/// failures and 429/5xx responses surface as transient ProviderFailures so
/// the gateway retries them; other 4xx responses are rejections.
class OpenAiHttpProvider : public Provider {
 public:
  explicit OpenAiHttpProvider(HttpProviderConfig config);
  ~OpenAiHttpProvider() override;

  CompletionResponse complete(const CompletionRequest& request) override;
  std::string name() const override { return "openai-compatible"; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace eduagent
