#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "eduagent/gateway.hpp"

namespace eduagent {

/// One scripted reply. Token counts of -1 are estimated from prompt/reply
/// word counts at serve time, so hand-written scripts stay short.
struct ScriptEntry {
  enum class Kind { ok, transient, reject };
  Kind kind = Kind::ok;
  std::string reply;
  long prompt_tokens = -1;
  long completion_tokens = -1;
  long latency_ms = 0;
};

/// Deterministic scripted provider. Scripts are keyed by (agent_role,
/// call_index) where call_index counts that role's calls from zero; a
/// wildcard entry per role serves any index without an exact match.
/// Captures every request for prompt-capture assertions in tests.
class MockProvider : public Provider {
 public:
  struct CapturedCall {
    std::string role;
    std::size_t index = 0;
    std::string system_prompt;
    std::string user_prompt;
  };

  void add_script(const std::string& role, std::size_t index, ScriptEntry entry);
  void add_wildcard(const std::string& role, ScriptEntry entry);

  /// Loads {"scripts": [{"role", "index"(int or "*"), "reply"(string or
  /// object), "kind"?, "prompt_tokens"?, "completion_tokens"?}, ...]}.
  static std::shared_ptr<MockProvider> from_json(const nlohmann::json& doc);
  static std::shared_ptr<MockProvider> from_file(const std::string& path);

  CompletionResponse complete(const CompletionRequest& request) override;
  std::string name() const override { return "mock"; }

  std::vector<CapturedCall> captured() const;
  std::size_t call_count(const std::string& role) const;
  std::size_t total_calls() const;
  /// Clears counters and captures; scripts stay.
  void reset();

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::size_t>, ScriptEntry> scripts_;
  std::map<std::string, ScriptEntry> wildcards_;
  std::map<std::string, std::size_t> counters_;
  std::vector<CapturedCall> captured_;
};

}  // namespace eduagent
