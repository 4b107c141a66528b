#include "eduagent/mock_provider.hpp"

#include <fstream>
#include <sstream>

namespace eduagent {
namespace {

long word_count(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  long n = 0;
  while (in >> word) ++n;
  return n;
}

ScriptEntry entry_from_json(const nlohmann::json& item) {
  ScriptEntry entry;
  const auto& reply = item.at("reply");
  entry.reply = reply.is_string() ? reply.get<std::string>() : reply.dump();
  const std::string kind = item.value("kind", "ok");
  if (kind == "ok")
    entry.kind = ScriptEntry::Kind::ok;
  else if (kind == "transient")
    entry.kind = ScriptEntry::Kind::transient;
  else if (kind == "reject")
    entry.kind = ScriptEntry::Kind::reject;
  else
    throw Error(ErrorCode::config_error, "unknown script kind: " + kind);
  entry.prompt_tokens = item.value("prompt_tokens", -1L);
  entry.completion_tokens = item.value("completion_tokens", -1L);
  entry.latency_ms = item.value("latency_ms", 0L);
  return entry;
}

}  // namespace

void MockProvider::add_script(const std::string& role, std::size_t index,
                              ScriptEntry entry) {
  std::lock_guard<std::mutex> lock(mu_);
  scripts_[{role, index}] = std::move(entry);
}

void MockProvider::add_wildcard(const std::string& role, ScriptEntry entry) {
  std::lock_guard<std::mutex> lock(mu_);
  wildcards_[role] = std::move(entry);
}

std::shared_ptr<MockProvider> MockProvider::from_json(const nlohmann::json& doc) {
  auto provider = std::make_shared<MockProvider>();
  for (const auto& item : doc.at("scripts")) {
    const std::string role = item.at("role").get<std::string>();
    ScriptEntry entry = entry_from_json(item);
    const auto& index = item.at("index");
    if (index.is_string() && index.get<std::string>() == "*")
      provider->add_wildcard(role, std::move(entry));
    else
      provider->add_script(role, index.get<std::size_t>(), std::move(entry));
  }
  return provider;
}

std::shared_ptr<MockProvider> MockProvider::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::file_unreadable, "cannot open mock script: " + path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw Error(ErrorCode::config_error, "mock script is not valid JSON: " + path);
  return from_json(doc);
}

CompletionResponse MockProvider::complete(const CompletionRequest& request) {
  ScriptEntry entry;
  std::size_t index = 0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    index = counters_[request.agent_role]++;
    captured_.push_back({request.agent_role, index, request.system_prompt,
                         request.user_prompt});
    auto exact = scripts_.find({request.agent_role, index});
    if (exact != scripts_.end()) {
      entry = exact->second;
    } else {
      auto wildcard = wildcards_.find(request.agent_role);
      if (wildcard == wildcards_.end())
        throw ProviderFailure(
            ErrorCode::provider_rejected,
            "no script for (" + request.agent_role + ", " + std::to_string(index) + ")",
            /*transient=*/false);
      entry = wildcard->second;
    }
  }
  const long prompt_tokens =
      entry.prompt_tokens >= 0
          ? entry.prompt_tokens
          : word_count(request.system_prompt) + word_count(request.user_prompt);
  switch (entry.kind) {
    case ScriptEntry::Kind::transient:
      throw ProviderFailure(ErrorCode::provider_unreachable,
                            "scripted transient failure", /*transient=*/true,
                            prompt_tokens);
    case ScriptEntry::Kind::reject:
      throw ProviderFailure(ErrorCode::provider_rejected, "scripted rejection",
                            /*transient=*/false, prompt_tokens);
    case ScriptEntry::Kind::ok:
      break;
  }
  CompletionResponse response;
  response.text = entry.reply;
  response.prompt_tokens = prompt_tokens;
  response.completion_tokens =
      entry.completion_tokens >= 0 ? entry.completion_tokens : word_count(entry.reply);
  response.latency_ms = entry.latency_ms;
  response.provider = name();
  return response;
}

std::vector<MockProvider::CapturedCall> MockProvider::captured() const {
  std::lock_guard<std::mutex> lock(mu_);
  return captured_;
}

std::size_t MockProvider::call_count(const std::string& role) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = counters_.find(role);
  return it == counters_.end() ? 0 : it->second;
}

std::size_t MockProvider::total_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t total = 0;
  for (const auto& [role, count] : counters_) total += count;
  return total;
}

void MockProvider::reset() {
  std::lock_guard<std::mutex> lock(mu_);
  counters_.clear();
  captured_.clear();
}

}  // namespace eduagent
