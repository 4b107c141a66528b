#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eduagent/model.hpp"

namespace eduagent {

struct BankItem {
  Question question;
  EducationalGoal goal;
  std::string source_id;
};

struct CurriculumSnippet {
  std::string concept_id;
  int min_grade = 1;
  int max_grade = 9;
  std::string text;
};

/// Difficulty-stratified anchor questions; fallback marks levels served from
/// the nearest grade because the goal's own grade had none.
struct AnchorLevel {
  std::vector<BankItem> items;
  bool fallback = false;
};

struct ReferenceSet {
  AnchorLevel easy;
  AnchorLevel medium;
  AnchorLevel hard;

  const AnchorLevel& level(Difficulty d) const;
  AnchorLevel& level(Difficulty d);
};

struct Rejection {
  std::size_t line = 0;
  std::string reason;
  std::optional<std::size_t> conflicts_with_line;
};

struct IngestReport {
  std::size_t input_lines = 0;  // non-blank lines seen
  std::size_t loaded = 0;
  std::vector<Rejection> rejections;
};

/// Concept-set Jaccard overlap |A∩B| / |A∪B| on normalized concept strings.
double concept_overlap(const std::vector<std::string>& a,
                       const std::vector<std::string>& b);

/// Immutable question bank with lexical retrieval; source order is the file
/// order and breaks all ranking ties.
class Bank {
 public:
  Bank() = default;
  static Bank from_items(std::vector<BankItem> items);

  const std::vector<BankItem>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

  /// Up to k_anchor items per difficulty level, preferring the goal's grade
  /// and maximal concept overlap; levels with no grade match fall back to the
  /// nearest grade (lower grade preferred on distance ties).
  ReferenceSet retrieve_references(const EducationalGoal& goal,
                                   std::size_t k_anchor) const;

 private:
  std::vector<BankItem> items_;
};

struct BankIngest {
  Bank bank;
  IngestReport report;
};

/// Loads a line-delimited JSON bank file. Invalid records land in the
/// rejection report with their line numbers; a duplicate source_id rejects
/// the later line citing the earlier one. Throws Error{file_unreadable} or
/// Error{empty_bank} when no valid record loads.
BankIngest ingest_bank(const std::string& path);

class CurriculumStore {
 public:
  CurriculumStore() = default;
  static CurriculumStore from_snippets(std::vector<CurriculumSnippet> snippets);
  static CurriculumStore from_file(const std::string& path);

  const std::vector<CurriculumSnippet>& snippets() const { return snippets_; }

  /// Snippets whose concept is one of the goal's and whose grade span covers
  /// the goal's grade, ranked by lexical overlap with the goal text,
  /// truncated to limit. May be empty.
  std::vector<CurriculumSnippet> retrieve(const EducationalGoal& goal,
                                          std::size_t limit) const;

 private:
  std::vector<CurriculumSnippet> snippets_;
};

void to_json(nlohmann::json& j, const BankItem& item);
void to_json(nlohmann::json& j, const CurriculumSnippet& s);
void from_json(const nlohmann::json& j, CurriculumSnippet& s);

}  // namespace eduagent
