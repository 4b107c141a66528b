#include <string>
#include <vector>

#include "eduagent/gateway.hpp"

namespace eduagent {
namespace {

using nlohmann::json;

/// Finds the end of the balanced object starting at text[start] == '{',
/// respecting string literals and escapes. Returns npos when unbalanced.
std::size_t find_balanced_end(const std::string& text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::string::npos;
}

std::optional<json> try_parse_object(const std::string& text) {
  for (std::size_t pos = text.find('{'); pos != std::string::npos;
       pos = text.find('{', pos + 1)) {
    const std::size_t end = find_balanced_end(text, pos);
    if (end == std::string::npos) continue;
    json parsed = json::parse(text.substr(pos, end - pos + 1), nullptr,
                              /*allow_exceptions=*/false);
    if (!parsed.is_discarded() && parsed.is_object()) return parsed;
  }
  return std::nullopt;
}

/// Contents of ``` fenced blocks, in order of appearance.
std::vector<std::string> fenced_blocks(const std::string& text) {
  std::vector<std::string> blocks;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("```", pos);
    if (open == std::string::npos) break;
    std::size_t body = open + 3;
    const std::size_t eol = text.find('\n', body);
    const std::size_t close = text.find("```", body);
    if (close == std::string::npos) break;
    // Skip an optional language tag on the opening line.
    if (eol != std::string::npos && eol < close) body = eol + 1;
    blocks.push_back(text.substr(body, close - body));
    pos = close + 3;
  }
  return blocks;
}

[[noreturn]] void violation(const std::string& field, const std::string& text) {
  throw TextError(ErrorCode::schema_violation,
                  "structured reply missing or ill-typed field: " + field, text);
}

const json& require(const json& doc, const char* field, const std::string& text) {
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) violation(field, text);
  return *it;
}

std::string require_string(const json& doc, const char* field, const std::string& text) {
  const json& v = require(doc, field, text);
  if (!v.is_string()) violation(field, text);
  return v.get<std::string>();
}

bool require_bool(const json& doc, const char* field, const std::string& text) {
  const json& v = require(doc, field, text);
  if (!v.is_boolean()) violation(field, text);
  return v.get<bool>();
}

double require_score(const json& doc, const char* field, const std::string& text) {
  const json& v = require(doc, field, text);
  if (!v.is_number()) violation(field, text);
  const double score = v.get<double>();
  if (!(score >= 0.0 && score <= 10.0)) violation(field, text);
  return score;
}

const json& require_array(const json& doc, const char* field, const std::string& text) {
  const json& v = require(doc, field, text);
  if (!v.is_array()) violation(field, text);
  return v;
}

void require_string_array(const json& doc, const char* field, const std::string& text) {
  for (const auto& item : require_array(doc, field, text))
    if (!item.is_string()) violation(field, text);
}

void check_plan(const json& doc, const std::string& text) {
  const json& concept_plan = require(doc, "concept_plan", text);
  if (!concept_plan.is_object()) violation("concept_plan", text);
  require_string_array(concept_plan, "concepts_covered", text);
  require_string_array(concept_plan, "prerequisites", text);
  require_string_array(concept_plan, "misconceptions", text);
  const json& competency_plan = require(doc, "competency_plan", text);
  if (!competency_plan.is_object()) violation("competency_plan", text);
  require_string_array(competency_plan, "competencies_assessed", text);
  require_string_array(competency_plan, "pathways", text);
  for (const auto& dir : require_array(doc, "directions", text)) {
    if (!dir.is_object()) violation("directions", text);
    require_string(dir, "angle", text);
  }
}

void check_question(const json& doc, const std::string& text) {
  require_string(doc, "stem", text);
  require_string(doc, "answer", text);
  if (doc.contains("options") && !doc.at("options").is_null())
    require_string_array(doc, "options", text);
  if (doc.contains("rationale") && !doc.at("rationale").is_null() &&
      !doc.at("rationale").is_string())
    violation("rationale", text);
  if (doc.contains("direction_id") && !doc.at("direction_id").is_null() &&
      !doc.at("direction_id").is_number_integer())
    violation("direction_id", text);
}

void check_evaluation(const json& doc, const std::string& text) {
  for (const auto& verdict : require_array(doc, "verdicts", text)) {
    if (!verdict.is_object()) violation("verdicts", text);
    require_string(verdict, "dimension", text);
    require_bool(verdict, "pass", text);
    if (verdict.contains("reason") && !verdict.at("reason").is_null() &&
        !verdict.at("reason").is_string())
      violation("reason", text);
  }
  require_score(doc, "rank", text);
  if (doc.contains("feedback") && !doc.at("feedback").is_null() &&
      !doc.at("feedback").is_string())
    violation("feedback", text);
}

void check_checker(const json& doc, const std::string& text) {
  require_bool(doc, "answer_correct", text);
  require_bool(doc, "unambiguous", text);
  require_bool(doc, "no_leading_hints", text);
  if (doc.contains("notes") && !doc.at("notes").is_null() && !doc.at("notes").is_string())
    violation("notes", text);
}

void check_verdict(const json& doc, const std::string& text) {
  require_bool(doc, "pass", text);
  require_string(doc, "reason", text);
}

void check_consistency(const json& doc, const std::string& text) {
  require_score(doc, "knowledge", text);
  require_score(doc, "difficulty", text);
  require_score(doc, "competence", text);
  require_score(doc, "solvability", text);
}

void check_pairwise(const json& doc, const std::string& text) {
  const std::string winner = require_string(doc, "winner", text);
  if (winner != "A" && winner != "B" && winner != "tie") violation("winner", text);
}

void check_schema(const json& doc, SchemaTag tag, const std::string& text) {
  switch (tag) {
    case SchemaTag::plan: return check_plan(doc, text);
    case SchemaTag::question: return check_question(doc, text);
    case SchemaTag::evaluation: return check_evaluation(doc, text);
    case SchemaTag::checker_verdict: return check_checker(doc, text);
    case SchemaTag::verdict: return check_verdict(doc, text);
    case SchemaTag::consistency: return check_consistency(doc, text);
    case SchemaTag::pairwise_choice: return check_pairwise(doc, text);
  }
}

}  // namespace

nlohmann::json extract_structured(const std::string& text, SchemaTag tag) {
  std::optional<json> doc;
  for (const auto& block : fenced_blocks(text)) {
    doc = try_parse_object(block);
    if (doc) break;
  }
  if (!doc) doc = try_parse_object(text);
  if (!doc)
    throw TextError(ErrorCode::parse_failure,
                    std::string("no well-formed JSON object in ") + to_string(tag) +
                        " reply",
                    text);
  check_schema(*doc, tag, text);
  return *doc;
}

}  // namespace eduagent
