#include "eduagent/gateway.hpp"

#include <chrono>
#include <cmath>
#include <thread>

namespace eduagent {

const char* to_string(SchemaTag tag) {
  switch (tag) {
    case SchemaTag::plan: return "plan";
    case SchemaTag::question: return "question";
    case SchemaTag::evaluation: return "evaluation";
    case SchemaTag::checker_verdict: return "checker_verdict";
    case SchemaTag::verdict: return "verdict";
    case SchemaTag::consistency: return "consistency";
    case SchemaTag::pairwise_choice: return "pairwise_choice";
  }
  return "question";
}

void validate_request(const CompletionRequest& request) {
  if (request.system_prompt.empty() || request.user_prompt.empty())
    throw Error(ErrorCode::invalid_argument, "prompts must be non-empty");
  if (request.model.empty())
    throw Error(ErrorCode::invalid_argument, "model must be set");
  if (request.agent_role.empty())
    throw Error(ErrorCode::invalid_argument, "agent_role must be set");
  if (!(request.temperature >= 0.0))
    throw Error(ErrorCode::invalid_argument, "temperature must be >= 0");
  if (!(request.top_p > 0.0 && request.top_p <= 1.0))
    throw Error(ErrorCode::invalid_argument, "top_p must be in (0,1]");
  if (request.max_tokens <= 0)
    throw Error(ErrorCode::invalid_argument, "max_tokens must be positive");
}

UsageLedger& UsageLedger::operator=(const UsageLedger& other) {
  if (this != &other) {
    auto copied = other.entries();
    std::lock_guard<std::mutex> lock(mu_);
    entries_ = std::move(copied);
  }
  return *this;
}

void UsageLedger::append(LedgerEntry entry) {
  entry.cost_usd = static_cast<double>(entry.prompt_tokens) * entry.input_price +
                   static_cast<double>(entry.completion_tokens) * entry.output_price;
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(std::move(entry));
}

void UsageLedger::append_all(const std::vector<LedgerEntry>& entries) {
  for (const auto& e : entries) append(e);
}

std::vector<LedgerEntry> UsageLedger::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

std::size_t UsageLedger::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

double UsageLedger::total_cost() const {
  std::lock_guard<std::mutex> lock(mu_);
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.cost_usd;
  return sum;
}

CostSummary ledger_report(const UsageLedger& ledger,
                          std::optional<std::size_t> run_count) {
  CostSummary summary;
  for (const auto& e : ledger.entries()) {
    auto fold = [&e](CostTotals& t) {
      t.calls += 1;
      t.prompt_tokens += e.prompt_tokens;
      t.completion_tokens += e.completion_tokens;
      t.cost_usd += e.cost_usd;
    };
    fold(summary.overall);
    fold(summary.per_role[e.agent_role]);
    fold(summary.per_model[e.model]);
  }
  if (run_count && *run_count > 0)
    summary.avg_cost_per_run = summary.overall.cost_usd / static_cast<double>(*run_count);
  return summary;
}

LlmGateway::LlmGateway(std::shared_ptr<Provider> provider, PriceTable prices,
                       RetryPolicy retry)
    : provider_(std::move(provider)), prices_(std::move(prices)), retry_(retry) {
  if (!provider_)
    throw Error(ErrorCode::config_error, "gateway requires a provider");
  if (retry_.max_attempts < 1)
    throw Error(ErrorCode::config_error, "retry cap must be >= 1");
  if (retry_.backoff_multiplier < 1.0)
    throw Error(ErrorCode::config_error, "backoff multiplier must be >= 1");
}

CompletionResponse LlmGateway::complete(const CompletionRequest& request) {
  validate_request(request);
  const TokenPrices prices = prices_.lookup(request.model);
  double delay_ms = static_cast<double>(retry_.initial_backoff_ms);
  for (int attempt = 1;; ++attempt) {
    try {
      CompletionResponse response = provider_->complete(request);
      ledger_.append({request.agent_role, request.model, response.prompt_tokens,
                      response.completion_tokens, prices.input_per_token,
                      prices.output_per_token, 0.0, false});
      return response;
    } catch (const ProviderFailure& failure) {
      if (failure.transient() && attempt < retry_.max_attempts) {
        if (delay_ms > 0)
          std::this_thread::sleep_for(
              std::chrono::milliseconds(static_cast<long>(delay_ms)));
        delay_ms *= retry_.backoff_multiplier;
        continue;
      }
      ledger_.append({request.agent_role, request.model, failure.prompt_tokens(), 0,
                      prices.input_per_token, prices.output_per_token, 0.0, true});
      throw;
    }
  }
}

void to_json(nlohmann::json& j, const LedgerEntry& e) {
  j = nlohmann::json{{"agent_role", e.agent_role},
                     {"model", e.model},
                     {"prompt_tokens", e.prompt_tokens},
                     {"completion_tokens", e.completion_tokens},
                     {"input_price", e.input_price},
                     {"output_price", e.output_price},
                     {"cost_usd", e.cost_usd},
                     {"failed", e.failed}};
}

void from_json(const nlohmann::json& j, LedgerEntry& e) {
  e.agent_role = j.at("agent_role").get<std::string>();
  e.model = j.at("model").get<std::string>();
  e.prompt_tokens = j.at("prompt_tokens").get<long>();
  e.completion_tokens = j.at("completion_tokens").get<long>();
  e.input_price = j.at("input_price").get<double>();
  e.output_price = j.at("output_price").get<double>();
  e.cost_usd = j.at("cost_usd").get<double>();
  e.failed = j.value("failed", false);
}

void to_json(nlohmann::json& j, const CostTotals& t) {
  j = nlohmann::json{{"calls", t.calls},
                     {"prompt_tokens", t.prompt_tokens},
                     {"completion_tokens", t.completion_tokens},
                     {"cost_usd", t.cost_usd}};
}

void to_json(nlohmann::json& j, const CostSummary& s) {
  j = nlohmann::json{{"overall", s.overall},
                     {"per_role", s.per_role},
                     {"per_model", s.per_model}};
  if (s.avg_cost_per_run)
    j["avg_cost_per_run"] = *s.avg_cost_per_run;
}

}  // namespace eduagent
