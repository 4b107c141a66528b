#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eduagent/errors.hpp"

namespace eduagent {

/// Which structured-reply schema a completion must satisfy. Every agent reply
/// is machine-parsed against one of these.
enum class SchemaTag {
  plan,             // design plan + directions
  question,         // one candidate question
  evaluation,       // verdicts + rank + feedback (Solver / Educator)
  checker_verdict,  // three booleans + notes
  verdict,          // single {pass, reason} document
  consistency,      // four 0-10 judge scores
  pairwise_choice,  // A/B/tie preference
};

const char* to_string(SchemaTag tag);

struct CompletionRequest {
  std::string agent_role;  // ledger attribution and mock script key
  std::string model;
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 1.0;
  double top_p = 0.9;
  std::optional<int> top_k;  // forwarded only when the provider supports it
  int max_tokens = 1024;
  SchemaTag response_schema_tag = SchemaTag::question;
};

void validate_request(const CompletionRequest& request);

struct CompletionResponse {
  std::string text;
  long prompt_tokens = 0;
  long completion_tokens = 0;
  long latency_ms = 0;
  std::string provider;
};

/// Provider failures carry transiency (retry eligibility) and the prompt
/// tokens consumed by the failed attempt, when known.
class ProviderFailure : public Error {
 public:
  ProviderFailure(ErrorCode code, const std::string& message, bool transient,
                  long prompt_tokens = 0)
      : Error(code, message), transient_(transient), prompt_tokens_(prompt_tokens) {}

  bool transient() const { return transient_; }
  long prompt_tokens() const { return prompt_tokens_; }

 private:
  bool transient_;
  long prompt_tokens_;
};

class Provider {
 public:
  virtual ~Provider() = default;
  /// Returns the raw completion or throws ProviderFailure.
  virtual CompletionResponse complete(const CompletionRequest& request) = 0;
  virtual std::string name() const = 0;
};

struct TokenPrices {
  double input_per_token = 0.0;
  double output_per_token = 0.0;
};

/// Per-model unit prices; models without an entry cost zero.
class PriceTable {
 public:
  void set(const std::string& model, TokenPrices prices) { prices_[model] = prices; }
  TokenPrices lookup(const std::string& model) const {
    auto it = prices_.find(model);
    return it == prices_.end() ? TokenPrices{} : it->second;
  }
  const std::map<std::string, TokenPrices>& all() const { return prices_; }

 private:
  std::map<std::string, TokenPrices> prices_;
};

struct LedgerEntry {
  std::string agent_role;
  std::string model;
  long prompt_tokens = 0;
  long completion_tokens = 0;
  double input_price = 0.0;
  double output_price = 0.0;
  double cost_usd = 0.0;  // always prompt*input + completion*output
  bool failed = false;
};

/// Append-only token/cost ledger; appends are serialized so concurrent
/// callers can share one instance.
class UsageLedger {
 public:
  UsageLedger() = default;
  UsageLedger(const UsageLedger& other) : entries_(other.entries()) {}
  UsageLedger& operator=(const UsageLedger& other);

  /// Records one call; cost_usd is computed here, never trusted from input.
  void append(LedgerEntry entry);
  void append_all(const std::vector<LedgerEntry>& entries);

  std::vector<LedgerEntry> entries() const;
  std::size_t size() const;
  double total_cost() const;

 private:
  mutable std::mutex mu_;
  std::vector<LedgerEntry> entries_;
};

struct CostTotals {
  std::size_t calls = 0;
  long prompt_tokens = 0;
  long completion_tokens = 0;
  double cost_usd = 0.0;
};

struct CostSummary {
  CostTotals overall;
  std::map<std::string, CostTotals> per_role;
  std::map<std::string, CostTotals> per_model;
  std::optional<double> avg_cost_per_run;
};

CostSummary ledger_report(const UsageLedger& ledger,
                          std::optional<std::size_t> run_count = std::nullopt);

struct RetryPolicy {
  int max_attempts = 3;
  int initial_backoff_ms = 200;
  double backoff_multiplier = 2.0;  // >= 1 so delays never decrease
};

/// Uniform completion interface over a provider: validates requests, retries
/// transient failures with exponential backoff, and records every call
/// outcome in its ledger.
class LlmGateway {
 public:
  LlmGateway(std::shared_ptr<Provider> provider, PriceTable prices,
             RetryPolicy retry = {});

  CompletionResponse complete(const CompletionRequest& request);

  UsageLedger& ledger() { return ledger_; }
  const UsageLedger& ledger() const { return ledger_; }
  const PriceTable& prices() const { return prices_; }
  Provider& provider() { return *provider_; }

 private:
  std::shared_ptr<Provider> provider_;
  PriceTable prices_;
  RetryPolicy retry_;
  UsageLedger ledger_;
};

/// Strips surrounding prose and code fences, parses the first well-formed
/// JSON object, and validates the fields required by the tag. Throws
/// TextError{parse_failure} when no object parses and
/// TextError{schema_violation} naming the offending field otherwise.
nlohmann::json extract_structured(const std::string& text, SchemaTag tag);

void to_json(nlohmann::json& j, const LedgerEntry& e);
void from_json(const nlohmann::json& j, LedgerEntry& e);
void to_json(nlohmann::json& j, const CostTotals& t);
void to_json(nlohmann::json& j, const CostSummary& s);

}  // namespace eduagent
