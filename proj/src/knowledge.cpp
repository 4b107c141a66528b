#include "eduagent/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "eduagent/text.hpp"

namespace eduagent {
namespace {

std::set<std::string> normalized_set(const std::vector<std::string>& values) {
  std::set<std::string> out;
  for (const auto& v : values) {
    std::string n = normalize_text(v);
    if (!n.empty()) out.insert(std::move(n));
  }
  return out;
}

std::set<std::string> token_set(const std::string& text) {
  auto tokens = tokenize(text);
  return {tokens.begin(), tokens.end()};
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::string goal_query_text(const EducationalGoal& goal) {
  std::string text;
  for (const auto& c : goal.knowledge_concepts) {
    text += c;
    text += ' ';
  }
  text += goal.competency;
  return text;
}

BankItem parse_bank_line(const nlohmann::json& doc) {
  BankItem item;
  item.source_id = doc.at("source_id").get<std::string>();
  if (normalize_text(item.source_id).empty())
    throw Error(ErrorCode::invalid_argument, "source_id is empty");
  item.goal.grade = doc.at("grade").get<int>();
  item.goal.knowledge_concepts =
      doc.at("knowledge_concepts").get<std::vector<std::string>>();
  item.goal.difficulty = difficulty_from_string(doc.at("difficulty").get<std::string>());
  item.goal.competency = doc.at("competency").get<std::string>();
  item.goal.question_type =
      question_type_from_string(doc.at("question_type").get<std::string>());
  item.goal.validate();
  item.question.stem = doc.at("stem").get<std::string>();
  item.question.answer = doc.at("answer").get<std::string>();
  if (doc.contains("options") && !doc.at("options").is_null())
    item.question.options = doc.at("options").get<std::vector<std::string>>();
  validate_question(item.question, item.goal.question_type);
  return item;
}

}  // namespace

const AnchorLevel& ReferenceSet::level(Difficulty d) const {
  switch (d) {
    case Difficulty::easy: return easy;
    case Difficulty::medium: return medium;
    case Difficulty::hard: return hard;
  }
  return medium;
}

AnchorLevel& ReferenceSet::level(Difficulty d) {
  switch (d) {
    case Difficulty::easy: return easy;
    case Difficulty::medium: return medium;
    case Difficulty::hard: return hard;
  }
  return medium;
}

double concept_overlap(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  return jaccard(normalized_set(a), normalized_set(b));
}

Bank Bank::from_items(std::vector<BankItem> items) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    item.goal.validate();
    validate_question(item.question, item.goal.question_type);
    if (!seen.insert(item.source_id).second)
      throw Error(ErrorCode::invalid_argument,
                  "duplicate source_id: " + item.source_id);
  }
  Bank bank;
  bank.items_ = std::move(items);
  return bank;
}

ReferenceSet Bank::retrieve_references(const EducationalGoal& goal,
                                       std::size_t k_anchor) const {
  if (k_anchor == 0)
    throw Error(ErrorCode::invalid_argument, "k_anchor must be >= 1");
  const auto goal_concepts = normalized_set(goal.knowledge_concepts);
  const auto goal_tokens = token_set(goal_query_text(goal));

  ReferenceSet refs;
  for (Difficulty d : {Difficulty::easy, Difficulty::medium, Difficulty::hard}) {
    AnchorLevel& out = refs.level(d);

    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < items_.size(); ++i)
      if (items_[i].goal.difficulty == d && items_[i].goal.grade == goal.grade)
        pool.push_back(i);

    if (pool.empty()) {
      // nearest grade, lower preferred on distance ties
      int best_grade = 0;
      bool found = false;
      for (const auto& item : items_) {
        if (item.goal.difficulty != d) continue;
        if (!found) {
          best_grade = item.goal.grade;
          found = true;
          continue;
        }
        const int cur = std::abs(item.goal.grade - goal.grade);
        const int best = std::abs(best_grade - goal.grade);
        if (cur < best || (cur == best && item.goal.grade < best_grade))
          best_grade = item.goal.grade;
      }
      if (!found) continue;  // level stays empty
      for (std::size_t i = 0; i < items_.size(); ++i)
        if (items_[i].goal.difficulty == d && items_[i].goal.grade == best_grade)
          pool.push_back(i);
      out.fallback = true;
    }

    std::vector<std::pair<double, double>> scores(items_.size(), {0.0, 0.0});
    bool any_shared = false;
    for (std::size_t i : pool) {
      const double overlap =
          jaccard(normalized_set(items_[i].goal.knowledge_concepts), goal_concepts);
      double stem_overlap = 0.0;
      for (const auto& tok : token_set(items_[i].question.stem))
        stem_overlap += goal_tokens.count(tok);
      scores[i] = {overlap, stem_overlap};
      if (overlap > 0.0) any_shared = true;
    }
    if (any_shared) {
      std::erase_if(pool, [&](std::size_t i) { return scores[i].first <= 0.0; });
    }
    std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a].first != scores[b].first) return scores[a].first > scores[b].first;
      return scores[a].second > scores[b].second;
    });
    if (pool.size() > k_anchor) pool.resize(k_anchor);
    for (std::size_t i : pool) out.items.push_back(items_[i]);
  }
  return refs;
}

BankIngest ingest_bank(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::file_unreadable, "cannot open bank file: " + path);

  BankIngest result;
  std::vector<BankItem> items;
  std::map<std::string, std::size_t> first_line_of;  // source_id -> line number
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++result.report.input_lines;
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      result.report.rejections.push_back({line_no, "not a JSON object", std::nullopt});
      continue;
    }
    try {
      BankItem item = parse_bank_line(doc);
      auto [it, inserted] = first_line_of.emplace(item.source_id, line_no);
      if (!inserted) {
        result.report.rejections.push_back(
            {line_no, "duplicate source_id '" + item.source_id + "' first seen on line " +
                          std::to_string(it->second),
             it->second});
        continue;
      }
      items.push_back(std::move(item));
      ++result.report.loaded;
    } catch (const nlohmann::json::exception& e) {
      result.report.rejections.push_back({line_no, e.what(), std::nullopt});
    } catch (const Error& e) {
      result.report.rejections.push_back({line_no, e.what(), std::nullopt});
    }
  }
  if (items.empty())
    throw Error(ErrorCode::empty_bank, "no valid records in bank file: " + path);
  result.bank = Bank::from_items(std::move(items));
  return result;
}

CurriculumStore CurriculumStore::from_snippets(std::vector<CurriculumSnippet> snippets) {
  for (const auto& s : snippets) {
    if (normalize_text(s.concept_id).empty())
      throw Error(ErrorCode::invalid_argument, "snippet concept is empty");
    if (s.min_grade < 1 || s.min_grade > s.max_grade || s.max_grade > 9)
      throw Error(ErrorCode::invalid_argument,
                  "snippet grade span invalid for concept: " + s.concept_id);
  }
  CurriculumStore store;
  store.snippets_ = std::move(snippets);
  return store;
}

CurriculumStore CurriculumStore::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::file_unreadable, "cannot open curriculum file: " + path);
  std::vector<CurriculumSnippet> snippets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded())
      throw Error(ErrorCode::invalid_argument,
                  "curriculum line " + std::to_string(line_no) + " is not valid JSON");
    snippets.push_back(doc.get<CurriculumSnippet>());
  }
  return from_snippets(std::move(snippets));
}

std::vector<CurriculumSnippet> CurriculumStore::retrieve(const EducationalGoal& goal,
                                                         std::size_t limit) const {
  if (limit == 0) return {};
  const auto goal_concepts = normalized_set(goal.knowledge_concepts);
  const auto goal_tokens = token_set(goal_query_text(goal));

  std::vector<std::size_t> matches;
  for (std::size_t i = 0; i < snippets_.size(); ++i) {
    const auto& s = snippets_[i];
    if (goal.grade < s.min_grade || goal.grade > s.max_grade) continue;
    if (goal_concepts.count(normalize_text(s.concept_id)) == 0) continue;
    matches.push_back(i);
  }
  std::vector<double> score(snippets_.size(), 0.0);
  for (std::size_t i : matches)
    score[i] = jaccard(token_set(snippets_[i].concept_id + " " + snippets_[i].text),
                       goal_tokens);
  std::stable_sort(matches.begin(), matches.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  if (matches.size() > limit) matches.resize(limit);

  std::vector<CurriculumSnippet> out;
  for (std::size_t i : matches) out.push_back(snippets_[i]);
  return out;
}

void to_json(nlohmann::json& j, const BankItem& item) {
  j = nlohmann::json{{"source_id", item.source_id},
                     {"stem", item.question.stem},
                     {"answer", item.question.answer},
                     {"grade", item.goal.grade},
                     {"knowledge_concepts", item.goal.knowledge_concepts},
                     {"difficulty", to_string(item.goal.difficulty)},
                     {"competency", item.goal.competency},
                     {"question_type", to_string(item.goal.question_type)}};
  if (item.question.options) j["options"] = *item.question.options;
}

void to_json(nlohmann::json& j, const CurriculumSnippet& s) {
  j = nlohmann::json{{"concept", s.concept_id},
                     {"min_grade", s.min_grade},
                     {"max_grade", s.max_grade},
                     {"text", s.text}};
}

void from_json(const nlohmann::json& j, CurriculumSnippet& s) {
  s.concept_id = j.at("concept").get<std::string>();
  s.min_grade = j.at("min_grade").get<int>();
  s.max_grade = j.at("max_grade").get<int>();
  s.text = j.at("text").get<std::string>();
}

}  // namespace eduagent
